//! Closed-form hull dimension of C_{λ,τ,ρ,σ}(k).
//!
//! Failure points with e1 < e2 are the points of 𝒯 = ℒ_{L,λ,τ} that are not
//! in 𝒫 = ℒ_{L,λ,π}, π = lcm(τ, ρ). The first points of 𝒯 and 𝒫 have closed
//! forms depending only on parities and on where λ sits relative to τ and π;
//! feeding them into the sublattice sums of [`crate::lattice`] gives
//! |ℱ_{<k}| = 2(|𝒯_{<k}| - |𝒫_{<k}|).
//!
//! 𝒫 is sometimes written with modulus τρ/κ₁. The points to exclude satisfy
//! e1 ≡ e2 mod τ and mod ρ, i.e. mod lcm(τ, ρ) = τρ/κ₂, which is what is
//! used here.

use serde::{Deserialize, Serialize};

use crate::grs::CodeFamilyParams;
use crate::lattice::{ceil_div, FirstPoint, Lattice};

/// Whether a formula value of c is the true value or only an upper bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Exactness {
    Exact,
    UpperBound,
}

impl Exactness {
    pub fn is_exact(self) -> bool {
        self == Exactness::Exact
    }
}

pub fn lattice_t(params: &CodeFamilyParams) -> Lattice {
    Lattice::new(params.l as i64, params.lambda as i64, params.tau as i64)
        .expect("validated parameters give λ, τ > 1")
}

pub fn lattice_p(params: &CodeFamilyParams) -> Lattice {
    Lattice::new(params.l as i64, params.lambda as i64, params.pi as i64)
        .expect("validated parameters give λ, π > 1")
}

fn with_lines(lat: &Lattice, d1: i64, d2: i64) -> FirstPoint {
    FirstPoint {
        d1,
        d2,
        t_star: (d1 + d2 - lat.a()).div_euclid(lat.b()),
        eps_star: (d2 - d1).div_euclid(lat.c()),
    }
}

/// (T₁, T₂), the first point of 𝒯, by case on parities.
pub fn first_point_t_closed_form(params: &CodeFamilyParams) -> FirstPoint {
    let (lambda, tau, rho) = (params.lambda as i64, params.tau as i64, params.rho as i64);
    let (d1, d2) = if lambda % 2 == 0 {
        ((lambda - 2) / 2, (lambda + 4 * tau - 2) / 2)
    } else if tau % 2 == 0 {
        (lambda - 1, lambda + tau - 1)
    } else if rho == 2 {
        if lambda < tau + 2 {
            (lambda - 1, lambda + tau - 1)
        } else {
            ((lambda - tau - 2) / 2, (lambda + 3 * tau - 2) / 2)
        }
    } else if lambda < tau {
        (lambda - 1, lambda + tau - 1)
    } else {
        ((lambda + tau - 2) / 2, (lambda + 3 * tau - 2) / 2)
    };
    with_lines(&lattice_t(params), d1, d2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Rounding {
    Plain,
    Even,
    Odd,
}

fn ceil_with_parity(num: i64, den: i64, parity: Rounding) -> i64 {
    let c = ceil_div(num, den);
    match parity {
        Rounding::Plain => c,
        Rounding::Even => c + c.rem_euclid(2),
        Rounding::Odd => c + 1 - c.rem_euclid(2),
    }
}

/// Row of the case table for (P₁, P₂): (case number, ε*, rounding of t*).
fn p_case(params: &CodeFamilyParams) -> (u8, i64, Rounding) {
    use Rounding::*;
    let CodeFamilyParams {
        lambda,
        tau,
        rho,
        pi,
        ..
    } = *params;
    let rho_even = rho % 2 == 0;
    if lambda % 2 == 0 {
        return if rho_even {
            (2, 1, Plain)
        } else {
            (1, 2, Plain)
        };
    }
    if tau % 2 == 0 {
        return (3, 1, Even);
    }
    // λ and τ odd from here on; π is a multiple of τ, so λ ≠ π.
    assert_ne!(lambda, pi, "λ = π is impossible when gcd(λ, τ) = 1");
    if lambda < tau {
        return if rho_even { (4, 1, Odd) } else { (5, 1, Even) };
    }
    if lambda < pi {
        return match (rho == 2, rho_even) {
            (false, false) => (6, 1, Odd),
            (true, _) => (7, 1, Odd),
            (false, true) => (8, 1, Even),
        };
    }
    match (rho == 2, rho_even) {
        (true, _) => (9, 1, Odd),
        (false, true) => (10, 1, Even),
        (false, false) => (11, 1, Odd),
    }
}

/// Which of the eleven parity cases determines (P₁, P₂).
pub fn p_case_number(params: &CodeFamilyParams) -> u8 {
    p_case(params).0
}

/// (P₁, P₂), the first point of 𝒫: t* is the least admissible t with
/// t λ ≥ β(ε*) = ε* π - L.
pub fn first_point_p_closed_form(params: &CodeFamilyParams) -> FirstPoint {
    let (_, eps, rounding) = p_case(params);
    let (lambda, pi, l) = (params.lambda as i64, params.pi as i64, params.l as i64);
    let beta = eps * pi - l;
    let t = ceil_with_parity(beta, lambda, rounding);
    let p1 = (t * lambda + l - eps * pi) / 2;
    FirstPoint {
        d1: p1,
        d2: p1 + eps * pi,
        t_star: t,
        eps_star: eps,
    }
}

/// Everything computed on the way to |ℱ_{<k}|.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HullComputation {
    pub params: CodeFamilyParams,
    pub k: u64,
    /// `None` only when a corrupted L empties the lattice.
    pub t_first: Option<FirstPoint>,
    pub t_first2: Option<FirstPoint>,
    pub p_first: Option<FirstPoint>,
    pub p_first2: Option<FirstPoint>,
    pub count_t: u64,
    pub count_p: u64,
    pub f_count: u64,
    pub exactness: Exactness,
}

impl HullComputation {
    pub fn new(params: &CodeFamilyParams, k: u64) -> Self {
        let t_lat = lattice_t(params);
        let p_lat = lattice_p(params);
        // The closed forms assume the true L; under a corrupted L they may
        // miss the lattice (which may even be empty), so fall back to the scan.
        let t_first = Some(first_point_t_closed_form(params))
            .filter(|f| t_lat.is_point(f.d1, f.d2))
            .or_else(|| t_lat.first_point());
        let p_first = Some(first_point_p_closed_form(params))
            .filter(|f| p_lat.is_point(f.d1, f.d2))
            .or_else(|| p_lat.first_point());
        let second = |lat: &Lattice, f: &Option<FirstPoint>| {
            f.as_ref()
                .and_then(|f| lat.sublattice_first_points(f).first2)
        };
        let t_first2 = second(&t_lat, &t_first);
        let p_first2 = second(&p_lat, &p_first);
        let count_t = t_lat.count_below_from(t_first.as_ref(), k as i64);
        let count_p = p_lat.count_below_from(p_first.as_ref(), k as i64);
        // 𝒫 ⊂ 𝒯; a negative difference only arises from a corrupted L.
        let f_count = 2 * (count_t - count_p).max(0) as u64;
        HullComputation {
            params: *params,
            k,
            t_first,
            t_first2,
            p_first,
            p_first2,
            count_t: count_t as u64,
            count_p: count_p.max(0) as u64,
            f_count,
            exactness: exactness(params, k),
        }
    }

    /// The entanglement c: |ℱ_{<k}| when exact, otherwise min(|ℱ_{<k}|, k),
    /// since ordered failure pairs can outnumber k past the exact range.
    pub fn c(&self) -> u64 {
        self.f_count.min(self.k)
    }

    /// k - c; a lower bound on the hull dimension unless exact.
    pub fn hull_dim(&self) -> u64 {
        self.k - self.c()
    }
}

/// Whether c = |ℱ_{<k}| is guaranteed for these parameters.
pub fn exactness(params: &CodeFamilyParams, k: u64) -> Exactness {
    let sigma_ok = params.sigma == 2 || params.sigma == 3 || params.sigma == params.rho;
    let lt = params.lambda_tau();
    if sigma_ok && (k <= lt || (params.rho == 2 && k <= 2 * lt)) {
        Exactness::Exact
    } else {
        Exactness::UpperBound
    }
}

/// |ℱ_{<k}|, the number of ordered failure points below k.
pub fn count_f(params: &CodeFamilyParams, k: u64) -> u64 {
    HullComputation::new(params, k).f_count
}

/// Formula value of (dim Hull, c, exactness).
pub fn hull_dim_formula(params: &CodeFamilyParams, k: u64) -> (u64, u64, Exactness) {
    let h = HullComputation::new(params, k);
    (h.hull_dim(), h.c(), h.exactness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grs::{admissible_families, failure_points_bruteforce, validate_params};

    fn q11() -> CodeFamilyParams {
        validate_params(11, 5, 3, 4, 3).unwrap()
    }
    fn q29() -> CodeFamilyParams {
        validate_params(29, 28, 5, 30, 2).unwrap()
    }
    fn q83() -> CodeFamilyParams {
        validate_params(83, 41, 6, 84, 2).unwrap()
    }

    #[test]
    fn lattices_of_worked_families() {
        assert_eq!(lattice_t(&q11()), Lattice::new(4, 5, 3).unwrap());
        assert_eq!(lattice_p(&q11()), Lattice::new(4, 5, 12).unwrap());
        assert_eq!(lattice_t(&q29()), Lattice::new(8, 28, 5).unwrap());
        assert_eq!(lattice_p(&q29()), Lattice::new(8, 28, 30).unwrap());
    }

    #[test]
    fn t_first_points() {
        assert_eq!(first_point_t_closed_form(&q29()).point(), (13, 23));
        assert_eq!(first_point_t_closed_form(&q11()).point(), (3, 6));
        assert_eq!(first_point_t_closed_form(&q83()).point(), (40, 46));
    }

    #[test]
    fn p_first_points() {
        let p = first_point_p_closed_form(&q29());
        assert_eq!(p_case_number(&q29()), 2);
        assert_eq!((p.d1, p.d2, p.t_star, p.eps_star), (3, 33, 1, 1));
        let p = first_point_p_closed_form(&q11());
        assert_eq!(p_case_number(&q11()), 8);
        assert_eq!((p.d1, p.d2, p.t_star, p.eps_star), (1, 13, 2, 1));
        for q in [7, 11, 13, 25, 27, 29, 31, 37, 41, 43, 47, 49, 53, 59] {
            for p in admissible_families(q) {
                if p_case_number(&p) == 11 {
                    assert_eq!(first_point_p_closed_form(&p).t_star, 1, "{p:?}");
                    assert_eq!(
                        first_point_p_closed_form(&p).d1,
                        (p.lambda as i64 - p.pi as i64 + p.l as i64) / 2
                    );
                }
            }
        }
    }

    #[test]
    fn parity_ceilings() {
        assert_eq!(ceil_with_parity(8, 5, Rounding::Even), 2);
        assert_eq!(ceil_with_parity(8, 5, Rounding::Odd), 3);
        assert_eq!(ceil_with_parity(10, 5, Rounding::Even), 2);
        assert_eq!(ceil_with_parity(10, 5, Rounding::Odd), 3);
        assert_eq!(ceil_with_parity(5, 5, Rounding::Odd), 1);
        assert_eq!(ceil_with_parity(22, 28, Rounding::Plain), 1);
    }

    #[test]
    fn counts_of_worked_families() {
        assert_eq!(count_f(&q11(), 9), 2);
        assert_eq!(count_f(&q11(), 6), 0);
        assert_eq!(count_f(&q29(), 28), 2);
        assert_eq!(count_f(&q11(), 0), 0);
        assert_eq!(hull_dim_formula(&q11(), 9), (7, 2, Exactness::Exact));
    }

    #[test]
    fn exactness_boundaries() {
        assert_eq!(exactness(&q29(), 140), Exactness::Exact);
        assert_eq!(exactness(&q29(), 141), Exactness::UpperBound);
        let p = validate_params(7, 3, 2, 4, 2).unwrap();
        assert_eq!(exactness(&p, 6), Exactness::Exact);
        assert_eq!(exactness(&p, 7), Exactness::UpperBound);
        // ρ = 2 doubles the exact range
        let p = validate_params(13, 3, 7, 2, 2).unwrap();
        assert_eq!(exactness(&p, 42), Exactness::Exact);
        assert_eq!(exactness(&p, 43), Exactness::UpperBound);
        // σ outside {2, 3, ρ}
        let p = validate_params(29, 7, 3, 10, 4).unwrap();
        assert_eq!(exactness(&p, 1), Exactness::UpperBound);
    }

    #[test]
    fn formula_matches_failure_points() {
        for q in [4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23] {
            for p in admissible_families(q) {
                let fps = failure_points_bruteforce(&p, p.n);
                let mut prev = 0;
                for k in 0..=p.n {
                    let brute = fps.iter().filter(|&&(a, b)| a < k && b < k).count() as u64;
                    let f = count_f(&p, k);
                    assert_eq!(f, brute, "{p:?} k={k}");
                    assert!(f >= prev && f.is_multiple_of(2));
                    prev = f;
                }
            }
        }
    }

    #[test]
    fn p_lattice_inside_t_lattice() {
        for p in admissible_families(29) {
            let (t, pl) = (lattice_t(&p), lattice_p(&p));
            for e2 in 0..200 {
                for e1 in 0..e2 {
                    if pl.is_point(e1, e2) {
                        assert!(t.is_point(e1, e2));
                    }
                }
            }
        }
    }
}
