use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

use super::field::FieldSpec;
use crate::error::{Error, Result};

/// Dense matrix with exact rational entries.
///
/// `BigRational` keeps every entry in lowest terms; over a prime field the
/// entries are reduced to residues when the rank is taken.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_integers(rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: entries.len() });
        }
        let data = entries.iter().map(|&e| BigRational::from_integer(BigInt::from(e))).collect();
        Ok(ExactMatrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// Rank over `field`. Fails only if some denominator vanishes mod p.
    pub fn rank(&self, field: FieldSpec) -> Result<usize> {
        if field.is_rational() {
            return Ok(rational_rank(self.rows, self.cols, self.data.clone()));
        }
        let p = field.characteristic() as u64;
        let mut residues = Vec::with_capacity(self.data.len());
        for x in &self.data {
            residues.push(residue(x, p)?);
        }
        Ok(dense_rank_mod_p(self.rows, self.cols, residues, p))
    }
}

fn residue(x: &BigRational, p: u64) -> Result<u64> {
    let m = BigInt::from(p);
    let num = x.numer().mod_floor(&m).to_u64().unwrap_or(0);
    let den = x.denom().mod_floor(&m).to_u64().unwrap_or(0);
    if den == 0 {
        return Err(Error::NonInvertibleEntry(p as u32));
    }
    Ok(num * inv_mod(den, p) % p)
}

fn rational_rank(rows: usize, cols: usize, mut a: Vec<BigRational>) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !a[r * cols + c].is_zero()) else {
            continue;
        };
        if pivot != rank {
            for k in 0..cols {
                a.swap(pivot * cols + k, rank * cols + k);
            }
        }
        let inv = a[rank * cols + c].recip();
        for r in rank + 1..rows {
            if a[r * cols + c].is_zero() {
                continue;
            }
            let f = &a[r * cols + c] * &inv;
            for k in c..cols {
                let sub = &f * &a[rank * cols + k];
                a[r * cols + k] -= sub;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

fn dense_rank_mod_p(rows: usize, cols: usize, mut a: Vec<u64>, p: u64) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| a[r * cols + c] != 0) else {
            continue;
        };
        if pivot != rank {
            for k in 0..cols {
                a.swap(pivot * cols + k, rank * cols + k);
            }
        }
        let inv = inv_mod(a[rank * cols + c], p);
        for r in rank + 1..rows {
            let lead = a[r * cols + c];
            if lead == 0 {
                continue;
            }
            let f = lead * inv % p;
            for k in c..cols {
                let sub = f * a[rank * cols + k] % p;
                a[r * cols + k] = (a[r * cols + k] + p - sub) % p;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

pub(crate) fn inv_mod(x: u64, p: u64) -> u64 {
    // Fermat: x^(p-2)
    let mut base = x % p;
    let mut e = p - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Integer matrix stored as sparse rows `(column, value)`, sorted by column.
///
/// Boundary matrices are built in this form; their rank is computed by
/// incremental row echelon reduction with pivots keyed on the leading column.
#[derive(Clone, Debug, Default)]
pub struct SparseMatrix {
    cols: usize,
    rows: Vec<Vec<(u32, i64)>>,
}

impl SparseMatrix {
    pub fn new(cols: usize) -> Self {
        SparseMatrix { cols, rows: Vec::new() }
    }

    /// Adds a row; entries need not be sorted, zero entries are dropped.
    pub fn push_row(&mut self, mut entries: Vec<(u32, i64)>) {
        entries.retain(|e| e.1 != 0);
        entries.sort_unstable_by_key(|e| e.0);
        debug_assert!(entries.iter().all(|e| (e.0 as usize) < self.cols));
        self.rows.push(entries);
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn to_dense(&self) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.rows.len(), self.cols);
        for (r, row) in self.rows.iter().enumerate() {
            for &(c, v) in row {
                m.set(r, c as usize, BigRational::from_integer(BigInt::from(v)));
            }
        }
        m
    }

    pub fn rank(&self, field: FieldSpec) -> usize {
        if self.rows.is_empty() || self.cols == 0 {
            return 0;
        }
        if field.is_rational() {
            // machine integers first; fall back to bignums on overflow
            integer_echelon_rank::<i64>(&self.rows).unwrap_or_else(|| {
                integer_echelon_rank::<BigInt>(&self.rows).expect("bignum arithmetic cannot overflow")
            })
        } else {
            modular_echelon_rank(&self.rows, field.characteristic() as u64)
        }
    }
}

fn modular_echelon_rank(rows: &[Vec<(u32, i64)>], p: u64) -> usize {
    let mut pivots: HashMap<u32, Vec<(u32, u64)>> = HashMap::new();
    let mut scratch = Vec::new();
    for row in rows {
        let mut cur: Vec<(u32, u64)> = row
            .iter()
            .filter_map(|&(c, v)| {
                let r = v.rem_euclid(p as i64) as u64;
                (r != 0).then_some((c, r))
            })
            .collect();
        while let Some(&(lead_col, lead)) = cur.first() {
            match pivots.get(&lead_col) {
                Some(piv) => {
                    // pivot rows are monic
                    axpy_mod(&cur, piv, p - lead, p, &mut scratch);
                    std::mem::swap(&mut cur, &mut scratch);
                }
                None => {
                    let inv = inv_mod(lead, p);
                    for e in cur.iter_mut() {
                        e.1 = e.1 * inv % p;
                    }
                    pivots.insert(lead_col, cur);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// `out = x + f * y` over GF(p).
fn axpy_mod(x: &[(u32, u64)], y: &[(u32, u64)], f: u64, p: u64, out: &mut Vec<(u32, u64)>) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j == y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i == x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push(x[i]);
            i += 1;
        } else if take_y {
            out.push((y[j].0, f * y[j].1 % p));
            j += 1;
        } else {
            let v = (x[i].1 + f * y[j].1) % p;
            if v != 0 {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
}

trait EchelonInt: Clone + Integer + Signed + CheckedMul + CheckedSub + From<i64> {}
impl EchelonInt for i64 {}
impl EchelonInt for BigInt {}

/// Fraction-free incremental echelon form over the integers; `None` on
/// machine-integer overflow.
fn integer_echelon_rank<T: EchelonInt>(rows: &[Vec<(u32, i64)>]) -> Option<usize> {
    let mut pivots: HashMap<u32, Vec<(u32, T)>> = HashMap::new();
    for row in rows {
        let mut cur: Vec<(u32, T)> = row.iter().map(|&(c, v)| (c, T::from(v))).collect();
        while let Some((lead_col, lead)) = cur.first().cloned() {
            match pivots.get(&lead_col) {
                Some(piv) => {
                    let plead = piv[0].1.clone();
                    let g = plead.gcd(&lead);
                    // cur <- (plead/g) * cur - (lead/g) * piv
                    cur = combine(&cur, &(plead / g.clone()), piv, &(lead / g))?;
                    normalize_content(&mut cur);
                }
                None => {
                    normalize_content(&mut cur);
                    pivots.insert(lead_col, cur);
                    break;
                }
            }
        }
    }
    Some(pivots.len())
}

fn combine<T: EchelonInt>(x: &[(u32, T)], fx: &T, y: &[(u32, T)], fy: &T) -> Option<Vec<(u32, T)>> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j == y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i == x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push((x[i].0, x[i].1.checked_mul(fx)?));
            i += 1;
        } else if take_y {
            out.push((y[j].0, T::zero().checked_sub(&y[j].1.checked_mul(fy)?)?));
            j += 1;
        } else {
            let v = x[i].1.checked_mul(fx)?.checked_sub(&y[j].1.checked_mul(fy)?)?;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

fn normalize_content<T: EchelonInt>(row: &mut [(u32, T)]) {
    let Some(first) = row.first() else { return };
    let mut g = first.1.abs();
    for e in row.iter().skip(1) {
        if g.is_one() {
            break;
        }
        g = g.gcd(&e.1);
    }
    if first.1.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for e in row.iter_mut() {
            e.1 = e.1.clone() / g.clone();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    /// Hollow triangle boundary in degree 1: rows are the edges 12, 13, 23,
    /// columns the vertices 1, 2, 3.
    fn triangle_boundary() -> Vec<i64> {
        vec![-1, 1, 0, -1, 0, 1, 0, -1, 1]
    }

    #[test]
    fn identity_over_gf2() {
        assert_eq!(ExactMatrix::identity(2).rank(FieldSpec::GF2).unwrap(), 2);
    }

    #[test]
    fn zero_matrix() {
        assert_eq!(ExactMatrix::zeros(3, 4).rank(FieldSpec::RATIONALS).unwrap(), 0);
        assert_eq!(SparseMatrix::new(4).rank(FieldSpec::RATIONALS), 0);
    }

    #[test]
    fn hollow_triangle_boundary_rank() {
        // Row reduction by hand: R3 = R2 - R1 after sign fixes, so rank 2.
        let m = ExactMatrix::from_integers(3, 3, &triangle_boundary()).unwrap();
        for f in [FieldSpec::RATIONALS, FieldSpec::GF2, FieldSpec::GF3] {
            assert_eq!(m.rank(f).unwrap(), 2);
        }
        let mut s = SparseMatrix::new(3);
        s.push_row(vec![(0, -1), (1, 1)]);
        s.push_row(vec![(0, -1), (2, 1)]);
        s.push_row(vec![(1, -1), (2, 1)]);
        assert_eq!(s.rank(FieldSpec::RATIONALS), 2);
        assert_eq!(s.rank(FieldSpec::GF2), 2);
    }

    #[test]
    fn characteristic_drops_rank() {
        let m = ExactMatrix::from_integers(2, 2, &[2, 0, 0, 1]).unwrap();
        assert_eq!(m.rank(FieldSpec::RATIONALS).unwrap(), 2);
        assert_eq!(m.rank(FieldSpec::GF2).unwrap(), 1);
    }

    #[test]
    fn rational_entries_mod_p() {
        let mut m = ExactMatrix::zeros(1, 1);
        m.set(0, 0, BigRational::new(BigInt::from(1), BigInt::from(2)));
        assert_eq!(m.rank(FieldSpec::GF3).unwrap(), 1);
        assert_eq!(m.rank(FieldSpec::GF2), Err(Error::NonInvertibleEntry(2)));
        m.set(0, 0, BigRational::from_f64(0.0).unwrap());
        assert_eq!(m.rank(FieldSpec::GF3).unwrap(), 0);
    }

    #[test]
    fn overflow_falls_back_to_bignums() {
        let big = i64::MAX / 3;
        let mut s = SparseMatrix::new(3);
        s.push_row(vec![(0, big), (1, 1)]);
        s.push_row(vec![(0, big - 1), (1, 7), (2, big)]);
        s.push_row(vec![(0, 3), (2, big - 5)]);
        let dense = s.to_dense().rank(FieldSpec::RATIONALS).unwrap();
        assert_eq!(s.rank(FieldSpec::RATIONALS), dense);
    }
}
