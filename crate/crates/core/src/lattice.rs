//! Congruence lattices ℒ_{A,B,C}: pairs 0 ≤ e1 < e2 with
//! e1 + e2 ≡ A (mod B) and e1 ≡ e2 (mod C).
//!
//! Every point sits on exactly one line f(t): e1 + e2 = tB + A and one line
//! g(ε): e2 - e1 = εC, so a point is named by (t, ε) with ε ≥ 1. The lattice
//! is split by the parity of t relative to the first point into two
//! sublattices; each is generated from its own first point by the moves
//! +(B, B) and +(-C', C') with non-negative coefficients, where C' = C/2 for
//! even C and C' = C otherwise. Counting reduces to summing, for each
//! (B, B)-step, the number of admissible (-C', C')-steps.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Upper bound on |A|, B and C so that all intermediate products fit in i64.
pub const MAX_PARAM: i64 = 1 << 30;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("lattice needs A >= 0, B > 1, C > 1 (got A={a}, B={b}, C={c})")]
    OutOfRange { a: i64, b: i64, c: i64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Lattice {
    a: i64,
    b: i64,
    c: i64,
}

/// A lattice point with the lines it lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FirstPoint {
    pub d1: i64,
    pub d2: i64,
    pub t_star: i64,
    pub eps_star: i64,
}

impl FirstPoint {
    pub fn point(&self) -> (i64, i64) {
        (self.d1, self.d2)
    }
}

/// First points of the two sublattices ℒ¹ (t ≡ t* mod 2) and ℒ² (t ≢ t*).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SublatticePair {
    pub first1: FirstPoint,
    pub first2: Option<FirstPoint>,
}

pub(crate) fn floor_div(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    a.div_euclid(b)
}

pub(crate) fn ceil_div(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    -(-a).div_euclid(b)
}

impl Lattice {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self, LatticeError> {
        if a < 0 || b <= 1 || c <= 1 || a > MAX_PARAM || b > MAX_PARAM || c > MAX_PARAM {
            return Err(LatticeError::OutOfRange { a, b, c });
        }
        Ok(Lattice { a, b, c })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn c(&self) -> i64 {
        self.c
    }

    /// Step of the (-C', C') move within a sublattice.
    pub fn c_step(&self) -> i64 {
        if self.c % 2 == 0 {
            self.c / 2
        } else {
            self.c
        }
    }

    pub fn is_empty(&self) -> bool {
        self.b % 2 == 0 && self.c % 2 == 0 && self.a % 2 == 1
    }

    pub fn is_point(&self, e1: i64, e2: i64) -> bool {
        0 <= e1 && e1 < e2 && (e1 + e2 - self.a).rem_euclid(self.b) == 0 && (e2 - e1) % self.c == 0
    }

    /// The intersection f(t) ∩ g(ε), when it is a lattice point.
    pub fn point_at(&self, t: i64, eps: i64) -> Option<(i64, i64)> {
        if eps < 1 {
            return None;
        }
        let x = t.checked_mul(self.b)?.checked_add(self.a)?;
        let lo = x.checked_sub(eps.checked_mul(self.c)?)?;
        if lo < 0 || lo % 2 != 0 {
            return None;
        }
        let e1 = lo / 2;
        Some((e1, e1 + eps * self.c))
    }

    /// Line indices (t, ε) of a lattice point.
    pub fn lines_of(&self, e1: i64, e2: i64) -> Option<(i64, i64)> {
        self.is_point(e1, e2)
            .then(|| ((e1 + e2 - self.a) / self.b, (e2 - e1) / self.c))
    }

    /// The colexicographically minimal lattice point.
    ///
    /// Lines f(t) are scanned upwards from the first one that can hold a
    /// point with ε = 1; on the first line that holds any point, the smallest
    /// admissible ε ∈ {1, 2} gives the answer.
    pub fn first_point(&self) -> Option<FirstPoint> {
        if self.is_empty() {
            return None;
        }
        let t0 = ceil_div(self.c - self.a, self.b);
        // A non-empty lattice has a point within a couple of B-periods of t0 on g(1)
        // or once tB + A reaches 2C on g(2).
        let t_max = t0 + ceil_div(2 * self.c, self.b) + 3;
        for t in t0..=t_max {
            for eps in 1..=2 {
                if let Some((d1, d2)) = self.point_at(t, eps) {
                    return Some(FirstPoint {
                        d1,
                        d2,
                        t_star: t,
                        eps_star: eps,
                    });
                }
            }
        }
        unreachable!("non-empty lattice {self:?} has a point before t = {t_max}")
    }

    /// Which sublattice (1 or 2) a point belongs to, relative to `first`.
    pub fn sublattice_of(&self, first: &FirstPoint, e1: i64, e2: i64) -> Option<u8> {
        let (t, _) = self.lines_of(e1, e2)?;
        Some(if (t - first.t_star).rem_euclid(2) == 0 {
            1
        } else {
            2
        })
    }

    /// First points of both sublattices given the lattice's first point.
    pub fn sublattice_first_points(&self, fp: &FirstPoint) -> SublatticePair {
        let (b, c) = (self.b, self.c);
        let first2 = if c % 2 == 0 && b % 2 == 1 {
            None
        } else if b % 2 == 0 {
            Some((fp.d1 + b / 2, fp.d2 + b / 2))
        } else if fp.eps_star == 2 {
            Some((fp.d1 + (b + c) / 2, fp.d2 + (b - c) / 2))
        } else {
            // B and C odd here, so (C - B)/2 is an integer
            let l = ceil_div((c - b) / 2 - fp.d1, b);
            Some((fp.d1 + (b - c) / 2 + l * b, fp.d2 + (b + c) / 2 + l * b))
        };
        let first2 = first2.map(|(d1, d2)| {
            let (t_star, eps_star) = self
                .lines_of(d1, d2)
                .expect("sublattice first point is a lattice point");
            FirstPoint {
                d1,
                d2,
                t_star,
                eps_star,
            }
        });
        SublatticePair {
            first1: *fp,
            first2,
        }
    }

    /// Number of points of the sublattice generated from `first` with e2 < k.
    pub fn count_sublattice_below(&self, first: &FirstPoint, k: i64) -> i64 {
        if k <= first.d2 {
            return 0;
        }
        let b = self.b;
        let cs = self.c_step();
        let upper = ceil_div(k - first.d2 - b, b);
        (0..=upper)
            .map(|i| {
                let by_e1 = floor_div(first.d1 + i * b, cs);
                let by_e2 = ceil_div(k - first.d2 - i * b, cs) - 1;
                by_e1.min(by_e2) + 1
            })
            .sum()
    }

    /// |ℒ_{<k}| from an explicitly supplied first point.
    pub fn count_below_from(&self, fp: Option<&FirstPoint>, k: i64) -> i64 {
        let Some(fp) = fp else { return 0 };
        let pair = self.sublattice_first_points(fp);
        self.count_sublattice_below(&pair.first1, k)
            + pair
                .first2
                .map_or(0, |f2| self.count_sublattice_below(&f2, k))
    }

    /// |{(e1, e2) ∈ ℒ : e2 < k}| by the closed-form sublattice sums.
    pub fn count_below(&self, k: i64) -> i64 {
        self.count_below_from(self.first_point().as_ref(), k)
    }

    /// Exhaustive count over 0 ≤ e1 < e2 < k.
    pub fn count_below_bruteforce(&self, k: i64) -> i64 {
        let mut count = 0;
        for e2 in 0..k.max(0) {
            for e1 in 0..e2 {
                if self.is_point(e1, e2) {
                    count += 1;
                }
            }
        }
        count
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lat(a: i64, b: i64, c: i64) -> Lattice {
        Lattice::new(a, b, c).unwrap()
    }

    /// Smallest point in colex order by direct scan, independent of the
    /// line-based search.
    fn brute_first(l: &Lattice, window: i64) -> Option<(i64, i64)> {
        (0..window).find_map(|e2| (0..e2).find(|&e1| l.is_point(e1, e2)).map(|e1| (e1, e2)))
    }

    fn window(l: &Lattice) -> i64 {
        l.a() + 4 * l.b() + 4 * l.c() + 4
    }

    #[test]
    fn constructor_bounds() {
        assert!(Lattice::new(-1, 2, 2).is_err());
        assert!(Lattice::new(0, 1, 2).is_err());
        assert!(Lattice::new(0, 2, 1).is_err());
        assert!(Lattice::new(0, 2, 2).is_ok());
    }

    #[test]
    fn emptiness() {
        assert!(lat(1, 2, 4).is_empty());
        assert!(!lat(0, 2, 4).is_empty());
        assert!(!lat(1, 3, 4).is_empty());
        assert_eq!(lat(1, 2, 4).first_point(), None);
        assert_eq!(lat(1, 2, 4).count_below(100), 0);
        assert_eq!(brute_first(&lat(1, 2, 4), 200), None);
    }

    #[test]
    fn membership() {
        let l = lat(4, 5, 3);
        assert!(l.is_point(3, 6));
        assert!(!l.is_point(6, 3));
        assert!(!l.is_point(4, 4));
        assert_eq!(l.point_at(1, 1), Some((3, 6)));
        assert_eq!(l.point_at(1, 0), None);
        assert_eq!(l.point_at(0, 1), None);
        assert_eq!(l.point_at(2, 1), None);
        assert_eq!(l.lines_of(3, 6), Some((1, 1)));
    }

    #[test]
    fn first_points_of_worked_lattices() {
        let fp = lat(4, 5, 3).first_point().unwrap();
        assert_eq!(
            fp,
            FirstPoint {
                d1: 3,
                d2: 6,
                t_star: 1,
                eps_star: 1
            }
        );
        let fp = lat(8, 28, 5).first_point().unwrap();
        assert_eq!(
            fp,
            FirstPoint {
                d1: 13,
                d2: 23,
                t_star: 1,
                eps_star: 2
            }
        );
    }

    #[test]
    fn sublattice_points_of_worked_lattices() {
        let l = lat(8, 28, 5);
        let pair = l.sublattice_first_points(&l.first_point().unwrap());
        assert_eq!(pair.first2.unwrap().point(), (27, 37));
        let l = lat(4, 5, 3);
        let pair = l.sublattice_first_points(&l.first_point().unwrap());
        assert_eq!(pair.first2.unwrap().point(), (4, 10));
        let l = lat(0, 3, 4);
        let pair = l.sublattice_first_points(&l.first_point().unwrap());
        assert_eq!(pair.first2, None);
    }

    #[test]
    fn counts_of_worked_lattices() {
        assert_eq!(lat(4, 5, 3).count_below(9), 1);
        assert_eq!(lat(4, 5, 3).count_below_bruteforce(9), 1);
        assert_eq!(lat(8, 28, 5).count_below(28), 1);
        assert_eq!(lat(8, 28, 5).count_below_bruteforce(28), 1);
        assert_eq!(lat(8, 28, 5).count_below(23), 0);
        assert_eq!(lat(8, 28, 5).count_below(0), 0);
    }

    #[test]
    fn first_point_minimal_on_small_grid() {
        for a in 0..=20 {
            for b in 2..=16 {
                for c in 2..=16 {
                    let l = lat(a, b, c);
                    let fp = l.first_point();
                    assert_eq!(fp.map(|f| f.point()), brute_first(&l, window(&l)), "{l:?}");
                    let Some(fp) = fp else { continue };
                    assert!(fp.eps_star == 1 || fp.eps_star == 2);
                    if c % 2 == 0 {
                        assert_eq!(fp.eps_star, 1);
                    }
                    // nothing on earlier lines
                    for t in (fp.t_star - 6)..fp.t_star {
                        for eps in 1..=8 {
                            assert_eq!(l.point_at(t, eps), None);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn sublattice_points_minimal_on_small_grid() {
        for a in 0..=20 {
            for b in 2..=16 {
                for c in 2..=16 {
                    let l = lat(a, b, c);
                    let Some(fp) = l.first_point() else { continue };
                    let pair = l.sublattice_first_points(&fp);
                    assert_eq!(pair.first2.is_none(), c % 2 == 0 && b % 2 == 1);
                    let w = window(&l) + 2 * b;
                    let brute2 = (0..w).find_map(|e2| {
                        (0..e2)
                            .find(|&e1| l.sublattice_of(&fp, e1, e2) == Some(2))
                            .map(|e1| (e1, e2))
                    });
                    assert_eq!(pair.first2.map(|f| f.point()), brute2, "{l:?}");
                }
            }
        }
    }

    #[test]
    fn positive_move_decomposition() {
        for a in 0..=12 {
            for b in 2..=12 {
                for c in 2..=12 {
                    let l = lat(a, b, c);
                    let Some(fp) = l.first_point() else { continue };
                    let pair = l.sublattice_first_points(&fp);
                    let cs = l.c_step();
                    for e2 in 0..80 {
                        for e1 in 0..e2 {
                            let Some(which) = l.sublattice_of(&fp, e1, e2) else {
                                continue;
                            };
                            let base = if which == 1 {
                                pair.first1
                            } else {
                                pair.first2.unwrap()
                            };
                            // (e1, e2) = base + i(B, B) + j(-C', C')
                            let sum = (e1 + e2) - (base.d1 + base.d2);
                            let diff = (e2 - e1) - (base.d2 - base.d1);
                            assert_eq!(sum.rem_euclid(2 * b), 0);
                            assert_eq!(diff.rem_euclid(2 * cs), 0);
                            let (i, j) = (sum / (2 * b), diff / (2 * cs));
                            assert!(i >= 0 && j >= 0, "{l:?} ({e1},{e2}) i={i} j={j}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn count_matches_bruteforce_small_grid() {
        for a in 0..=15 {
            for b in 2..=12 {
                for c in 2..=12 {
                    let l = lat(a, b, c);
                    for k in 0..60 {
                        assert_eq!(l.count_below(k), l.count_below_bruteforce(k), "{l:?} k={k}");
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn count_matches_bruteforce(a in 0i64..200, b in 2i64..60, c in 2i64..60, k in 0i64..300) {
            let l = lat(a, b, c);
            prop_assert_eq!(l.count_below(k), l.count_below_bruteforce(k));
        }

        #[test]
        fn count_is_monotone(a in 0i64..100, b in 2i64..40, c in 2i64..40, k in 0i64..300) {
            let l = lat(a, b, c);
            prop_assert!(l.count_below(k) <= l.count_below(k + 1));
        }
    }
}
