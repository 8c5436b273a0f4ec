//! Exact row reduction over `Q`.
//!
//! Rows are cleared to primitive integer vectors and eliminated without
//! fractions (`row_i <- p * row_i - q * row_pivot`, then divided by the row
//! content), so intermediate entries stay as small as the content gcd allows.
//! Only the final reduced echelon form is converted back to rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A subspace of `Q^ncols` in reduced row echelon form. Since RREF is unique,
/// two `Echelon`s span the same space iff they compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<Vec<BigRational>>,
    pivots: Vec<usize>,
}

fn primitive(row: &[BigRational]) -> Vec<BigInt> {
    let mut den = BigInt::one();
    for c in row {
        den = den.lcm(c.denom());
    }
    let mut ints: Vec<BigInt> = row.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    make_primitive(&mut ints);
    ints
}

fn make_primitive(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for c in row.iter() {
        if !c.is_zero() {
            g = g.gcd(c);
            if g.is_one() {
                return;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for c in row.iter_mut() {
        *c /= &g;
    }
}

impl Echelon {
    /// Reduced row echelon form of the span of `rows`.
    pub fn from_rows(rows: &[Vec<BigRational>], ncols: usize) -> Echelon {
        let mut m: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), ncols, "row length mismatch");
                primitive(r)
            })
            .filter(|r| r.iter().any(|c| !c.is_zero()))
            .collect();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..ncols {
            if rank == m.len() {
                break;
            }
            // smallest nonzero entry as pivot keeps multipliers small
            let Some(p) = (rank..m.len()).filter(|&i| !m[i][col].is_zero()).min_by_key(|&i| m[i][col].bits()) else {
                continue;
            };
            m.swap(rank, p);
            let pivot_row = m[rank].clone();
            let pv = &pivot_row[col];
            for (i, row) in m.iter_mut().enumerate() {
                if i == rank || row[col].is_zero() {
                    continue;
                }
                let g = pv.gcd(&row[col]);
                let a = pv / &g;
                let b = &row[col] / &g;
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = &a * &*x - &b * y;
                }
                make_primitive(row);
            }
            pivots.push(col);
            rank += 1;
        }
        m.truncate(rank);
        let rows = m
            .into_iter()
            .zip(&pivots)
            .map(|(row, &pc)| {
                let pv = row[pc].clone();
                row.into_iter().map(|x| BigRational::new(x, pv.clone())).collect()
            })
            .collect();
        Echelon { ncols, rows, pivots }
    }

    pub fn zero(ncols: usize) -> Echelon {
        Echelon { ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ncols: usize) -> Echelon {
        let rows = (0..ncols)
            .map(|i| {
                let mut r = vec![BigRational::zero(); ncols];
                r[i] = BigRational::one();
                r
            })
            .collect();
        Echelon { ncols, rows, pivots: (0..ncols).collect() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` minus its projection along the pivot columns.
    pub fn reduce(&self, v: &[BigRational]) -> Vec<BigRational> {
        let mut v = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if v[pc].is_zero() {
                continue;
            }
            let c = v[pc].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &c * y;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    pub fn is_subspace_of(&self, other: &Echelon) -> bool {
        self.ncols == other.ncols && self.rows.iter().all(|r| other.contains(r))
    }

    /// Basis of `{ v : row . v = 0 for every row }`.
    pub fn orthogonal_complement(&self) -> Echelon {
        let basis = nullspace_of_rref(self);
        Echelon::from_rows(&basis, self.ncols)
    }

    /// Intersection of subspaces, as the complement of the sum of complements.
    pub fn intersect_all(spaces: &[&Echelon]) -> Echelon {
        let ncols = spaces.first().map_or(0, |s| s.ncols);
        let mut perp_rows = Vec::new();
        for s in spaces {
            assert_eq!(s.ncols, ncols, "column count mismatch");
            perp_rows.extend(s.orthogonal_complement().rows);
        }
        Echelon::from_rows(&perp_rows, ncols).orthogonal_complement()
    }
}

fn nullspace_of_rref(e: &Echelon) -> Vec<Vec<BigRational>> {
    let mut is_pivot = vec![false; e.ncols];
    for &p in &e.pivots {
        is_pivot[p] = true;
    }
    (0..e.ncols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![BigRational::zero(); e.ncols];
            v[f] = BigRational::one();
            for (row, &pc) in e.rows.iter().zip(&e.pivots) {
                v[pc] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Basis of `{ v in Q^ncols : M v = 0 }` where `M` has the given rows.
pub fn nullspace(rows: &[Vec<BigRational>], ncols: usize) -> Vec<Vec<BigRational>> {
    nullspace_of_rref(&Echelon::from_rows(rows, ncols))
}
