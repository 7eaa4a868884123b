//! Exact feasibility of "some convex combination of the points lies below the
//! target", decided by a phase-one simplex on an integer tableau.
//!
//! The tableau is kept fraction-free: every pivot divides exactly by the
//! previous pivot (Bareiss), so all entries stay integral minors of the
//! input. Pivoting follows Bland's rule (lowest eligible column, lowest basic
//! index on ratio ties), which terminates and makes the run reproducible.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedMul, CheckedSub, Signed};

use crate::error::{Error, Result};
use crate::monomial::ExponentVec;

/// True iff there are rationals `c_i >= 0`, `sum c_i = 1`, with
/// `sum c_i * points[i] <= target` componentwise.
///
/// An empty point list admits no convex combination and yields `false`.
pub fn lp_feasible_convex_cover(points: &[ExponentVec], target: &ExponentVec) -> Result<bool> {
    let n = target.len();
    for p in points {
        if p.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: p.len() });
        }
    }
    if points.is_empty() {
        return Ok(false);
    }
    let pts: Vec<&[u32]> = points.iter().map(|p| p.as_slice()).collect();
    Ok(match phase_one::<i128>(&pts, target.as_slice()) {
        Some(ans) => ans,
        None => phase_one::<BigInt>(&pts, target.as_slice()).expect("bignum pivots cannot overflow"),
    })
}

trait TableauInt: Clone + Integer + Signed + CheckedMul + CheckedSub + From<i32> {}
impl TableauInt for i128 {}
impl TableauInt for BigInt {}

/// Rows `0..n`: `sum_i b_ij c_i + s_j = t_j`; row `n`: `sum_i c_i + r = 1`.
/// Columns: `c_0..c_{m-1}`, `s_0..s_{n-1}`, `r`, then the right-hand side.
/// Minimises `r`; the system is feasible iff the optimum is zero.
fn phase_one<T: TableauInt>(points: &[&[u32]], target: &[u32]) -> Option<bool> {
    let m = points.len();
    let n = target.len();
    let rows = n + 1;
    let art = m + n;
    let cols = m + n + 2;
    let rhs = cols - 1;

    let mut t: Vec<Vec<T>> = vec![vec![T::zero(); cols]; rows];
    for j in 0..n {
        for (i, p) in points.iter().enumerate() {
            t[j][i] = T::from(p[j] as i32);
        }
        t[j][m + j] = T::one();
        t[j][rhs] = T::from(target[j] as i32);
    }
    for x in &mut t[n][..m] {
        *x = T::one();
    }
    t[n][art] = T::one();
    t[n][rhs] = T::one();

    let mut basis: Vec<usize> = (m..m + n).chain(std::iter::once(art)).collect();
    let mut denom = T::one();

    loop {
        let Some(art_row) = basis.iter().position(|&b| b == art) else {
            return Some(true);
        };
        if t[art_row][rhs].is_zero() {
            return Some(true);
        }
        // reduced cost of column k is -t[art_row][k] / denom, denom > 0
        let entering = (0..art).find(|&k| !basis.contains(&k) && t[art_row][k].is_positive());
        let Some(k) = entering else {
            return Some(false);
        };

        let mut leave: Option<usize> = None;
        for r in 0..rows {
            if !t[r][k].is_positive() {
                continue;
            }
            leave = Some(match leave {
                None => r,
                Some(best) => {
                    // compare t[r][rhs]/t[r][k] against t[best][rhs]/t[best][k]
                    let lhs = t[r][rhs].checked_mul(&t[best][k])?;
                    let rhs_v = t[best][rhs].checked_mul(&t[r][k])?;
                    if lhs < rhs_v || (lhs == rhs_v && basis[r] < basis[best]) {
                        r
                    } else {
                        best
                    }
                }
            });
        }
        // the artificial row always has a positive entry in column k
        let p = leave.expect("entering column has a positive entry");

        let pivot = t[p][k].clone();
        let pivot_row = t[p].clone();
        for (r, row) in t.iter_mut().enumerate() {
            if r == p {
                continue;
            }
            let factor = row[k].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = pivot.checked_mul(x)?.checked_sub(&factor.checked_mul(y)?)? / denom.clone();
            }
        }
        denom = pivot;
        basis[p] = k;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(v: &[u32]) -> ExponentVec {
        ExponentVec::new(v.to_vec())
    }

    #[test]
    fn midpoint_is_covered() {
        let pts = [ev(&[2, 0]), ev(&[0, 2])];
        assert!(lp_feasible_convex_cover(&pts, &ev(&[1, 1])).unwrap());
    }

    #[test]
    fn below_the_segment_is_not_covered() {
        let pts = [ev(&[2, 0]), ev(&[0, 2])];
        assert!(!lp_feasible_convex_cover(&pts, &ev(&[1, 0])).unwrap());
        assert!(!lp_feasible_convex_cover(&pts, &ev(&[0, 0])).unwrap());
    }

    #[test]
    fn dimension_mismatch() {
        let pts = [ev(&[2, 0, 1])];
        assert!(matches!(lp_feasible_convex_cover(&pts, &ev(&[1, 1])), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn empty_point_list() {
        assert!(!lp_feasible_convex_cover(&[], &ev(&[1, 1])).unwrap());
    }

    #[test]
    fn bignum_path_agrees() {
        let pts = [ev(&[3, 0, 1]), ev(&[0, 3, 1]), ev(&[1, 1, 0])];
        for t in [[1, 1, 1], [2, 1, 0], [1, 2, 1], [0, 0, 3]] {
            let target = ev(&t);
            let p: Vec<&[u32]> = pts.iter().map(|p| p.as_slice()).collect();
            assert_eq!(phase_one::<i128>(&p, target.as_slice()), phase_one::<BigInt>(&p, target.as_slice()));
        }
    }
}
