//! Arithmetic in F_q and its quadratic extension F_{q^2}.
//!
//! F_q is built as F_p[Y]/(h(Y)) and F_{q^2} as F_q[X]/(m(X)), where h and m
//! are the first monic irreducible polynomials of the right degree found in
//! a fixed enumeration order. An element of F_{q^2} is stored as a single
//! integer index: its prime-field coordinates (low degree first, the F_q
//! coordinate of X^0 before that of X^1) read as base-p digits. The base
//! field is then exactly the set of indices below q.
//!
//! Multiplication goes through discrete log tables built from the smallest
//! primitive element, so every query after construction is a table lookup.

use std::fmt;

use thiserror::Error;

/// Largest q accepted by [`Field::new`]; the log tables have q^2 entries.
pub const MAX_Q: u64 = 2048;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("q = {0} exceeds the supported maximum of {MAX_Q}")]
    TooLarge(u64),
    #[error("{t} does not divide the multiplicative order {order}")]
    NotADivisor { t: u64, order: u64 },
    #[error("element {0} is not in the base field F_q")]
    NotInBaseField(Elem),
    #[error("zero has no norm preimage in the multiplicative group")]
    ZeroNorm,
}

/// An element of F_{q^2}, identified by its canonical index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Factor `n` into (prime, exponent) pairs by trial division.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Returns `(p, m)` with `q = p^m`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    match factorize(q).as_slice() {
        [(p, m)] => Some((*p, *m)),
        _ => None,
    }
}

// Dense polynomials over F_p, coefficients low degree first.
fn poly_rem(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
    let db = b.len() - 1;
    let lead_inv = mod_pow(b[db], p - 2, p);
    while a.len() > db {
        let top = *a.last().unwrap();
        if top != 0 {
            let f = top * lead_inv % p;
            let shift = a.len() - 1 - db;
            for (i, &bi) in b.iter().enumerate() {
                let idx = shift + i;
                a[idx] = (a[idx] + p - f * bi % p) % p;
            }
        }
        a.pop();
    }
    a
}

fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

fn digits(mut x: u64, base: u64, len: usize) -> Vec<u64> {
    let mut out = vec![0; len];
    for d in out.iter_mut() {
        *d = x % base;
        x /= base;
    }
    out
}

fn is_irreducible_over_prime(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        // every monic polynomial of degree d
        for tail in 0..p.pow(d as u32) {
            let mut g = digits(tail, p, d);
            g.push(1);
            if poly_rem(f.to_vec(), &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// The linked pair of fields F_q ⊂ F_{q^2}.
#[derive(Clone)]
pub struct Field {
    p: u64,
    m: u32,
    q: u64,
    /// Monic modulus of F_q over F_p, low degree first (length m + 1).
    base_modulus: Vec<u64>,
    /// (c0, c1) with m(X) = X^2 + c1 X + c0 over F_q.
    ext_modulus: (u32, u32),
    generator: Elem,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("q", &self.q)
            .field("base_modulus", &self.base_modulus)
            .field("ext_modulus", &self.ext_modulus)
            .field("generator", &self.generator)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q
            && self.base_modulus == other.base_modulus
            && self.ext_modulus == other.ext_modulus
            && self.generator == other.generator
    }
}

impl Eq for Field {}

/// Builds F_q and F_{q^2} for a prime power `q`.
pub fn make_fields(q: u64) -> Result<Field, FieldError> {
    Field::new(q)
}

impl Field {
    pub fn new(q: u64) -> Result<Self, FieldError> {
        let (p, m) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        if q > MAX_Q {
            return Err(FieldError::TooLarge(q));
        }

        let base_modulus = if m == 1 {
            vec![0, 1]
        } else {
            (0..q)
                .map(|tail| {
                    let mut f = digits(tail, p, m as usize);
                    f.push(1);
                    f
                })
                .find(|f| is_irreducible_over_prime(f, p))
                .expect("an irreducible polynomial of every degree exists")
        };

        let mut field = Field {
            p,
            m,
            q,
            base_modulus,
            ext_modulus: (0, 0),
            generator: Elem::ONE,
            exp: Vec::new(),
            log: Vec::new(),
        };

        field.ext_modulus = (0..q * q)
            .map(|i| ((i % q) as u32, (i / q) as u32))
            .find(|&(c0, c1)| {
                (0..q as u32).all(|x| {
                    let x2 = field.base_mul_slow(x, x);
                    let t = field.base_add(x2, field.base_mul_slow(c1, x));
                    field.base_add(t, c0) != 0
                })
            })
            .expect("an irreducible quadratic exists over every finite field");

        let order = q * q - 1;
        let cofactors: Vec<u64> = factorize(order).iter().map(|&(r, _)| order / r).collect();
        let generator = (1..q * q)
            .map(|i| Elem(i as u32))
            .find(|&g| cofactors.iter().all(|&e| field.pow_slow(g, e) != Elem::ONE))
            .expect("the multiplicative group of a finite field is cyclic");

        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; (q * q) as usize];
        let mut x = Elem::ONE;
        for i in 0..order {
            exp.push(x.0);
            log[x.0 as usize] = i as u32;
            x = field.mul_slow(x, generator);
        }
        debug_assert_eq!(x, Elem::ONE);

        field.generator = generator;
        field.exp = exp;
        field.log = log;
        Ok(field)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    /// Degree of F_q over its prime field.
    pub fn base_degree(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Number of elements of the extension, q^2.
    pub fn order(&self) -> u64 {
        self.q * self.q
    }

    /// Order of the multiplicative group of F_{q^2}.
    pub fn group_order(&self) -> u64 {
        self.q * self.q - 1
    }

    pub fn base_modulus(&self) -> &[u64] {
        &self.base_modulus
    }

    /// Coefficients `(c0, c1)` of the extension modulus X^2 + c1 X + c0.
    pub fn ext_modulus(&self) -> (Elem, Elem) {
        (Elem(self.ext_modulus.0), Elem(self.ext_modulus.1))
    }

    pub fn generator(&self) -> Elem {
        self.generator
    }

    /// Element with the given canonical index, if in range.
    pub fn element(&self, index: u64) -> Option<Elem> {
        (index < self.order()).then_some(Elem(index as u32))
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.order() as u32).map(Elem)
    }

    /// The elements of the base field F_q, in canonical order.
    pub fn base_elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.q as u32).map(Elem)
    }

    pub fn is_in_base(&self, x: Elem) -> bool {
        u64::from(x.0) < self.q
    }

    /// The image of an integer under Z → F_p ⊂ F_q.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.p as i64) as u32)
    }

    /// Prime-field coordinates, low degree first.
    pub fn coords(&self, x: Elem) -> Vec<u64> {
        digits(u64::from(x.0), self.p, 2 * self.m as usize)
    }

    /// Canonical text form: comma separated prime-field coordinates.
    pub fn format(&self, x: Elem) -> String {
        self.coords(x)
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }

    // ---- base field F_q (indices < q) ----

    fn base_add(&self, a: u32, b: u32) -> u32 {
        if self.m == 1 {
            return ((u64::from(a) + u64::from(b)) % self.p) as u32;
        }
        let (mut a, mut b) = (u64::from(a), u64::from(b));
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.m {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out as u32
    }

    fn base_neg(&self, a: u32) -> u32 {
        if self.m == 1 {
            return ((self.p - u64::from(a)) % self.p) as u32;
        }
        let mut a = u64::from(a);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.m {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out as u32
    }

    fn base_mul_slow(&self, a: u32, b: u32) -> u32 {
        if self.m == 1 {
            return (u64::from(a) * u64::from(b) % self.p) as u32;
        }
        let m = self.m as usize;
        let da = digits(u64::from(a), self.p, m);
        let db = digits(u64::from(b), self.p, m);
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        let r = poly_rem(prod, &self.base_modulus, self.p);
        r.iter().rev().fold(0u64, |acc, &c| acc * self.p + c) as u32
    }

    // ---- extension arithmetic used only while building the tables ----

    fn split(&self, x: Elem) -> (u32, u32) {
        let q = self.q as u32;
        (x.0 % q, x.0 / q)
    }

    fn join(&self, lo: u32, hi: u32) -> Elem {
        Elem(lo + hi * self.q as u32)
    }

    fn mul_slow(&self, a: Elem, b: Elem) -> Elem {
        let (a0, a1) = self.split(a);
        let (b0, b1) = self.split(b);
        let (c0, c1) = self.ext_modulus;
        let hh = self.base_mul_slow(a1, b1);
        let lo = self.base_add(
            self.base_mul_slow(a0, b0),
            self.base_neg(self.base_mul_slow(hh, c0)),
        );
        let mid = self.base_add(self.base_mul_slow(a0, b1), self.base_mul_slow(a1, b0));
        let hi = self.base_add(mid, self.base_neg(self.base_mul_slow(hh, c1)));
        self.join(lo, hi)
    }

    fn pow_slow(&self, mut base: Elem, mut e: u64) -> Elem {
        let mut acc = Elem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    // ---- public arithmetic ----

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let (a0, a1) = self.split(a);
        let (b0, b1) = self.split(b);
        self.join(self.base_add(a0, b0), self.base_add(a1, b1))
    }

    pub fn neg(&self, a: Elem) -> Elem {
        let (a0, a1) = self.split(a);
        self.join(self.base_neg(a0), self.base_neg(a1))
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            return Elem::ZERO;
        }
        let s = u64::from(self.log[a.0 as usize]) + u64::from(self.log[b.0 as usize]);
        Elem(self.exp[(s % self.group_order()) as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a.is_zero() {
            return None;
        }
        let l = u64::from(self.log[a.0 as usize]);
        Some(Elem(
            self.exp[((self.group_order() - l) % self.group_order()) as usize],
        ))
    }

    /// `a^e` for a non-negative exponent, with 0^0 = 1.
    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.is_zero() {
            return Elem::ZERO;
        }
        let l = u64::from(self.log[a.0 as usize]) as u128;
        let r = (l * u128::from(e % self.group_order())) % u128::from(self.group_order());
        Elem(self.exp[r as usize])
    }

    /// `g^e` for the fixed primitive element g, any integer exponent.
    pub fn gen_pow(&self, e: i64) -> Elem {
        let r = e.rem_euclid(self.group_order() as i64);
        Elem(self.exp[r as usize])
    }

    /// Discrete logarithm to the base of the fixed primitive element.
    pub fn log(&self, a: Elem) -> Option<u64> {
        (!a.is_zero()).then(|| u64::from(self.log[a.0 as usize]))
    }

    /// The Frobenius automorphism x ↦ x^q of F_{q^2} over F_q.
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.q)
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: Elem) -> Option<u64> {
        let l = self.log(a)?;
        let n = self.group_order();
        Some(n / gcd(n, l))
    }

    pub fn sum<I: IntoIterator<Item = Elem>>(&self, items: I) -> Elem {
        items
            .into_iter()
            .fold(Elem::ZERO, |acc, x| self.add(acc, x))
    }

    /// The primitive t-th root of unity g^((q^2 - 1)/t).
    pub fn root_of_unity(&self, t: u64) -> Result<Elem, FieldError> {
        let order = self.group_order();
        if t == 0 || !order.is_multiple_of(t) {
            return Err(FieldError::NotADivisor { t, order });
        }
        Ok(Elem(self.exp[(order / t) as usize % order as usize]))
    }

    /// Some `v` with `v^(q+1) = alpha`, for `alpha` in F_q^*.
    ///
    /// `g^(q+1)` generates F_q^*, so `alpha = g^((q+1) m)` and `v = g^m`.
    pub fn norm_preimage(&self, alpha: Elem) -> Result<Elem, FieldError> {
        if alpha.is_zero() {
            return Err(FieldError::ZeroNorm);
        }
        if !self.is_in_base(alpha) {
            return Err(FieldError::NotInBaseField(alpha));
        }
        let l = self.log(alpha).expect("nonzero");
        debug_assert_eq!(l % (self.q + 1), 0);
        Ok(Elem(self.exp[(l / (self.q + 1)) as usize]))
    }

    /// Σ_{i<γ} ζ_γ^{iN}: γ·1 when γ | N, zero otherwise.
    pub fn geometric_character_sum(&self, gamma: u64, n: u64) -> Result<Elem, FieldError> {
        let order = self.group_order();
        if gamma == 0 || !order.is_multiple_of(gamma) {
            return Err(FieldError::NotADivisor { t: gamma, order });
        }
        Ok(if n.is_multiple_of(gamma) {
            self.from_int((gamma % self.p) as i64)
        } else {
            Elem::ZERO
        })
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
