//! The GRS code family C_{λ,τ,ρ,σ}(k) over F_{q^2} and its brute-force
//! Hermitian-hull oracle.
//!
//! The evaluation points are A(i,j,ℓ) = ζ_λ^i ζ_τ^j ζ_ρ^ℓ for 0 ≤ i < λ,
//! 0 ≤ j < τ, 0 ≤ ℓ < σ, listed in lexicographic (i,j,ℓ) order. Generator
//! matrix columns follow the same order.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{gcd, prime_power, Elem, Field, FieldError};
use crate::linalg::Matrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParamError {
    #[error("q = {0} is not a prime power")]
    NotPrimePower(u64),
    #[error("q = {0} is too small, the family needs q >= 4")]
    QTooSmall(u64),
    #[error("lambda = {lambda} must be > 1 and divide q - 1 = {q_minus_one}")]
    LambdaNotDivisor { lambda: u64, q_minus_one: u64 },
    #[error("tau = {tau} must be > 1 and divide q + 1 = {q_plus_one}")]
    TauNotDivisor { tau: u64, q_plus_one: u64 },
    #[error("rho = {rho} must be > 1 and divide q + 1 = {q_plus_one}")]
    RhoNotDivisor { rho: u64, q_plus_one: u64 },
    #[error("gcd(lambda, tau) = gcd({lambda}, {tau}) must be 1")]
    NotCoprime { lambda: u64, tau: u64 },
    #[error("rho / kappa = {rho} / {kappa} must be at least 2")]
    RhoOverKappaTooSmall { rho: u64, kappa: u64 },
    #[error("sigma = {sigma} must lie in [2, rho / kappa] = [2, {max}]")]
    SigmaOutOfRange { sigma: u64, max: u64 },
    #[error("length n = {n} exceeds q^2 - 1 = {max}")]
    LengthTooLarge { n: u64, max: u64 },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("dimension k = {k} must lie in [1, {n}]")]
    DimensionOutOfRange { k: u64, n: u64 },
    #[error("vector lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("field has q = {field_q} but the parameters use q = {params_q}")]
    FieldMismatch { field_q: u64, params_q: u64 },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A validated parameter tuple (q, λ, τ, ρ, σ) with its derived quantities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CodeFamilyParams {
    pub q: u64,
    pub lambda: u64,
    pub tau: u64,
    pub rho: u64,
    pub sigma: u64,
    pub kappa1: u64,
    pub kappa2: u64,
    pub n: u64,
    /// lcm(τ, ρ) = τρ/κ₂.
    pub pi: u64,
    /// The exponent offset L.
    pub l: u64,
}

impl CodeFamilyParams {
    pub fn kappa(&self) -> u64 {
        self.kappa1 * self.kappa2
    }

    /// λτ, the dimension bound below which the hull count is exact.
    pub fn lambda_tau(&self) -> u64 {
        self.lambda * self.tau
    }

    /// Copy of these parameters with a different L. Only meaningful for
    /// fault injection; the rest of the record is left untouched.
    pub fn with_l(mut self, l: u64) -> Self {
        self.l = l;
        self
    }

    pub fn check_dimension(&self, k: u64) -> Result<(), CodeError> {
        if k == 0 || k > self.n {
            Err(CodeError::DimensionOutOfRange { k, n: self.n })
        } else {
            Ok(())
        }
    }
}

/// Checks every assumption on (q, λ, τ, ρ, σ) and fills in the derived values.
pub fn validate_params(
    q: u64,
    lambda: u64,
    tau: u64,
    rho: u64,
    sigma: u64,
) -> Result<CodeFamilyParams, ParamError> {
    if prime_power(q).is_none() {
        return Err(ParamError::NotPrimePower(q));
    }
    if q < 4 {
        return Err(ParamError::QTooSmall(q));
    }
    if lambda <= 1 || !(q - 1).is_multiple_of(lambda) {
        return Err(ParamError::LambdaNotDivisor {
            lambda,
            q_minus_one: q - 1,
        });
    }
    if tau <= 1 || !(q + 1).is_multiple_of(tau) {
        return Err(ParamError::TauNotDivisor {
            tau,
            q_plus_one: q + 1,
        });
    }
    if rho <= 1 || !(q + 1).is_multiple_of(rho) {
        return Err(ParamError::RhoNotDivisor {
            rho,
            q_plus_one: q + 1,
        });
    }
    if gcd(lambda, tau) != 1 {
        return Err(ParamError::NotCoprime { lambda, tau });
    }
    let kappa1 = gcd(lambda, rho);
    let kappa2 = gcd(tau, rho);
    let kappa = kappa1 * kappa2;
    // κ₁ and κ₂ are coprime divisors of ρ, so κ | ρ.
    let max_sigma = rho / kappa;
    if max_sigma < 2 {
        return Err(ParamError::RhoOverKappaTooSmall { rho, kappa });
    }
    if sigma < 2 || sigma > max_sigma {
        return Err(ParamError::SigmaOutOfRange {
            sigma,
            max: max_sigma,
        });
    }
    let n = lambda * tau * sigma;
    if n > q * q - 1 {
        return Err(ParamError::LengthTooLarge { n, max: q * q - 1 });
    }
    let mut params = CodeFamilyParams {
        q,
        lambda,
        tau,
        rho,
        sigma,
        kappa1,
        kappa2,
        n,
        pi: tau * rho / kappa2,
        l: 0,
    };
    params.l = select_l(&params);
    Ok(params)
}

/// The value of L for these parameters.
pub fn select_l(params: &CodeFamilyParams) -> u64 {
    let CodeFamilyParams {
        lambda, tau, rho, ..
    } = *params;
    if lambda % 2 == 0 {
        2 * tau - 2
    } else if lambda < tau || tau % 2 == 0 || rho == 2 {
        tau - 2
    } else {
        2 * tau - 2
    }
}

/// Every valid parameter tuple for `q`, ordered by (λ, τ, ρ, σ).
pub fn admissible_families(q: u64) -> Vec<CodeFamilyParams> {
    if q < 4 || prime_power(q).is_none() {
        return Vec::new();
    }
    let divisors = |m: u64| (2..=m).filter(move |d| m.is_multiple_of(*d));
    let mut out = Vec::new();
    for lambda in divisors(q - 1) {
        for tau in divisors(q + 1) {
            for rho in divisors(q + 1) {
                for sigma in 2..=rho {
                    if let Ok(p) = validate_params(q, lambda, tau, rho, sigma) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

fn check_field(field: &Field, params: &CodeFamilyParams) -> Result<(), CodeError> {
    if field.q() != params.q {
        return Err(CodeError::FieldMismatch {
            field_q: field.q(),
            params_q: params.q,
        });
    }
    Ok(())
}

/// The coefficients s_0, …, s_{σ-1} ∈ F_q^*, summing to zero.
pub fn coefficients_s(field: &Field, params: &CodeFamilyParams) -> Result<Vec<Elem>, CodeError> {
    check_field(field, params)?;
    let sigma = params.sigma as usize;
    if sigma == 2 {
        return Ok(vec![Elem::ONE, field.neg(Elem::ONE)]);
    }
    let mut s = vec![Elem::ONE; sigma - 2];
    let head = field.from_int(sigma as i64 - 2);
    let mut excluded = vec![Elem::ZERO, field.neg(head)];
    if let Some(half) = field.inv(field.from_int(2)) {
        excluded.push(field.neg(field.mul(head, half)));
    }
    let chosen = field
        .base_elements()
        .find(|x| !excluded.contains(x))
        .expect("q >= 4 leaves an admissible coefficient");
    s.push(chosen);
    s.push(field.neg(field.add(head, chosen)));
    Ok(s)
}

/// Index triples (i, j, ℓ) in column order.
pub fn index_triples(params: &CodeFamilyParams) -> Vec<(u64, u64, u64)> {
    let mut out = Vec::with_capacity(params.n as usize);
    for i in 0..params.lambda {
        for j in 0..params.tau {
            for l in 0..params.sigma {
                out.push((i, j, l));
            }
        }
    }
    out
}

/// The evaluation points A(i, j, ℓ) in lexicographic (i, j, ℓ) order.
pub fn evaluation_set(field: &Field, params: &CodeFamilyParams) -> Result<Vec<Elem>, CodeError> {
    check_field(field, params)?;
    let zl = field.root_of_unity(params.lambda)?;
    let zt = field.root_of_unity(params.tau)?;
    let zr = field.root_of_unity(params.rho)?;
    Ok(index_triples(params)
        .into_iter()
        .map(|(i, j, l)| {
            field.mul(
                field.mul(field.pow(zl, i), field.pow(zt, j)),
                field.pow(zr, l),
            )
        })
        .collect())
}

/// The multipliers v(i, j, ℓ), with v^(q+1) = ζ_λ^(-iL) s_ℓ.
pub fn multiplier_vector(
    field: &Field,
    params: &CodeFamilyParams,
    s: &[Elem],
) -> Result<Vec<Elem>, CodeError> {
    check_field(field, params)?;
    if s.len() != params.sigma as usize {
        return Err(CodeError::LengthMismatch(s.len(), params.sigma as usize));
    }
    let zl = field.root_of_unity(params.lambda)?;
    let zl_inv_l = field.pow(field.inv(zl).expect("root of unity"), params.l);
    index_triples(params)
        .into_iter()
        .map(|(i, _, l)| {
            let alpha = field.mul(field.pow(zl_inv_l, i), s[l as usize]);
            field.norm_preimage(alpha).map_err(CodeError::from)
        })
        .collect()
}

/// Row `e` is ev_{v,A}(X^e), for e = 0, …, k-1.
pub fn generator_matrix(
    field: &Field,
    points: &[Elem],
    multipliers: &[Elem],
    k: u64,
) -> Result<Matrix, CodeError> {
    if points.len() != multipliers.len() {
        return Err(CodeError::LengthMismatch(points.len(), multipliers.len()));
    }
    let n = points.len() as u64;
    if k == 0 || k > n {
        return Err(CodeError::DimensionOutOfRange { k, n });
    }
    let mut row: Vec<Elem> = multipliers.to_vec();
    let mut rows = Vec::with_capacity(k as usize);
    for _ in 0..k {
        let next = row
            .iter()
            .zip(points)
            .map(|(&x, &a)| field.mul(x, a))
            .collect();
        rows.push(std::mem::replace(&mut row, next));
    }
    Ok(Matrix::from_rows(rows))
}

/// u ·ₕ w = Σ u_i w_i^q.
pub fn hermitian_inner_product(field: &Field, u: &[Elem], w: &[Elem]) -> Result<Elem, CodeError> {
    if u.len() != w.len() {
        return Err(CodeError::LengthMismatch(u.len(), w.len()));
    }
    Ok(field.sum(
        u.iter()
            .zip(w)
            .map(|(&a, &b)| field.mul(a, field.frobenius(b))),
    ))
}

/// M = G (G^q)^T, i.e. M[i][j] = g_i ·ₕ g_j.
pub fn gram_matrix(field: &Field, g: &Matrix) -> Matrix {
    let conj = g.map(|x| field.frobenius(x));
    let k = g.rows();
    let mut m = Matrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            let mut acc = Elem::ZERO;
            for (&a, &b) in g.row(i).iter().zip(conj.row(j)) {
                acc = field.add(acc, field.mul(a, b));
            }
            m.set(i, j, acc);
        }
    }
    m
}

pub fn gram_rank(field: &Field, gram: &Matrix) -> u64 {
    gram.rank(field) as u64
}

/// Is (e1, e2) a failure point: e1+e2 ≡ L (λ), e1 ≡ e2 (τ), e1 ≢ e2 (ρ).
pub fn is_failure_point(params: &CodeFamilyParams, e1: u64, e2: u64) -> bool {
    (e1 + e2) % params.lambda == params.l % params.lambda
        && e1 % params.tau == e2 % params.tau
        && e1 % params.rho != e2 % params.rho
}

/// All ordered failure points with both coordinates below `k`.
pub fn failure_points_bruteforce(params: &CodeFamilyParams, k: u64) -> BTreeSet<(u64, u64)> {
    let mut out = BTreeSet::new();
    for e1 in 0..k {
        for e2 in 0..k {
            if is_failure_point(params, e1, e2) {
                out.insert((e1, e2));
            }
        }
    }
    out
}

/// Hull dimension and entanglement count measured from the Gram matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleHull {
    pub hull_dim: u64,
    pub c: u64,
}

/// A fully constructed member of the family: field, points and multipliers.
#[derive(Clone, Debug)]
pub struct CodeFamily {
    pub params: CodeFamilyParams,
    pub field: Field,
    pub s: Vec<Elem>,
    pub points: Vec<Elem>,
    pub multipliers: Vec<Elem>,
}

impl CodeFamily {
    pub fn new(params: CodeFamilyParams) -> Result<Self, CodeError> {
        let field = Field::new(params.q)?;
        Self::with_field(params, field)
    }

    pub fn with_field(params: CodeFamilyParams, field: Field) -> Result<Self, CodeError> {
        let s = coefficients_s(&field, &params)?;
        let points = evaluation_set(&field, &params)?;
        let multipliers = multiplier_vector(&field, &params, &s)?;
        Ok(CodeFamily {
            params,
            field,
            s,
            points,
            multipliers,
        })
    }

    pub fn generator_matrix(&self, k: u64) -> Result<Matrix, CodeError> {
        generator_matrix(&self.field, &self.points, &self.multipliers, k)
    }

    /// ev_{v,A}(X^e).
    pub fn monomial_row(&self, e: u64) -> Vec<Elem> {
        self.points
            .iter()
            .zip(&self.multipliers)
            .map(|(&a, &v)| self.field.mul(v, self.field.pow(a, e)))
            .collect()
    }

    pub fn gram_matrix(&self, k: u64) -> Result<Matrix, CodeError> {
        Ok(gram_matrix(&self.field, &self.generator_matrix(k)?))
    }

    /// The n × n Gram matrix; its leading k × k block is the Gram matrix of
    /// C(k).
    pub fn full_gram_matrix(&self) -> Matrix {
        self.gram_matrix(self.params.n).expect("k = n is in range")
    }

    pub fn hull_dimension_oracle(&self, k: u64) -> Result<OracleHull, CodeError> {
        let c = gram_rank(&self.field, &self.gram_matrix(k)?);
        Ok(OracleHull { hull_dim: k - c, c })
    }
}

/// Hull dimension and c of C(k) by Gram rank.
pub fn hull_dimension_oracle(params: &CodeFamilyParams, k: u64) -> Result<OracleHull, CodeError> {
    params.check_dimension(k)?;
    CodeFamily::new(*params)?.hull_dimension_oracle(k)
}

/// Every k-subset of columns of `g` (k = number of rows) has full rank.
pub fn all_column_minors_nonsingular(field: &Field, g: &Matrix) -> bool {
    let k = g.rows();
    let n = g.cols();
    subsets(n, k).all(|cols| g.select_columns(&cols).rank(field) == k)
}

/// Minimum Hamming distance of the row space of `g` (assumed full rank).
///
/// Enumerates codewords when there are few of them, otherwise finds the
/// largest coordinate set on which some nonzero codeword vanishes.
pub fn minimum_distance_bruteforce(field: &Field, g: &Matrix) -> u64 {
    let k = g.rows();
    let n = g.cols();
    let q2 = field.order();
    if (k as f64) * (q2 as f64).log2() <= 18.0 {
        let mut best = n as u64;
        let mut coeffs = vec![0u64; k];
        loop {
            // advance the mixed-radix counter; stop after wrapping around
            let mut pos = 0;
            while pos < k {
                coeffs[pos] += 1;
                if coeffs[pos] < q2 {
                    break;
                }
                coeffs[pos] = 0;
                pos += 1;
            }
            if pos == k {
                break;
            }
            let weight = (0..n)
                .filter(|&c| {
                    let x =
                        field
                            .sum((0..k).map(|r| {
                                field.mul(field.element(coeffs[r]).unwrap(), g.get(r, c))
                            }));
                    !x.is_zero()
                })
                .count() as u64;
            best = best.min(weight);
        }
        return best;
    }
    assert!(n <= 32, "subset search needs n <= 32, got {n}");
    let mut max_zeros = 0;
    for mask in 0u64..(1 << n) {
        let size = mask.count_ones() as usize;
        if size <= max_zeros {
            continue;
        }
        let cols: Vec<usize> = (0..n).filter(|&c| mask >> c & 1 == 1).collect();
        if g.select_columns(&cols).rank(field) < k {
            max_zeros = size;
        }
    }
    (n - max_zeros) as u64
}

/// Generator rows of the Hermitian dual {u : u ·ₕ g = 0 for all rows g}.
pub fn hermitian_dual(field: &Field, g: &Matrix) -> Matrix {
    g.map(|x| field.frobenius(x)).kernel(field)
}

fn subsets(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut current: Option<Vec<usize>> = (k <= n).then(|| (0..k).collect());
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                current = None;
                break;
            }
            i -= 1;
            if next[i] < n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                current = Some(next);
                break;
            }
        }
        Some(out)
    })
}
