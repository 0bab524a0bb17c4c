//! Exact rational scalars, vectors and dense matrices.
//!
//! Everything is arbitrary precision. Determinants use fraction-free
//! (Bareiss) elimination on a denominator-cleared integer copy; rank, kernel
//! and solve go through reduced row echelon form over the rationals.

use std::fmt;

use num::{BigInt, BigRational, Integer, One, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// A point or direction; the length is the ambient dimension.
pub type Vector = Vec<Rational>;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn vector(entries: &[i64]) -> Vector {
    entries.iter().map(|&e| rat(e)).collect()
}

/// Parses `"p/q"`, `"p"` or a plain decimal integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[Rational], s: &Rational) -> Vector {
    a.iter().map(|x| x * s).collect()
}

pub fn is_zero_vector(a: &[Rational]) -> bool {
    a.iter().all(Zero::is_zero)
}

fn lcm_of_denominators(a: &[Rational]) -> BigInt {
    a.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Positive multiple of `a` with coprime integer entries.
pub fn primitive(a: &[Rational]) -> Result<Vector> {
    if is_zero_vector(a) {
        return Err(Error::ZeroVector);
    }
    let l = lcm_of_denominators(a);
    let ints: Vec<BigInt> = a.iter().map(|x| (x * &l).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    Ok(ints
        .into_iter()
        .map(|x| Rational::from_integer(x / &g))
        .collect())
}

pub fn to_f64(x: &Rational) -> f64 {
    use num::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

/// Dense rectangular matrix; all rows have `ncols` entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: Vec<Vector>,
    ncols: usize,
}

impl Matrix {
    pub fn new(rows: Vec<Vector>) -> Result<Self> {
        let ncols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch {
                expected: ncols,
                found: bad.len(),
            });
        }
        Ok(Self { rows, ncols })
    }

    /// A matrix with zero rows but a declared column count.
    pub fn empty(ncols: usize) -> Self {
        Self {
            rows: Vec::new(),
            ncols,
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::new(rows.iter().map(|r| vector(r)).collect())
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { rat(1) } else { rat(0) })
                    .collect()
            })
            .collect();
        Self { rows, ncols: n }
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self {
            rows: vec![vec![rat(0); ncols]; nrows],
            ncols,
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.rows[i][j]
    }

    pub fn transpose(&self) -> Self {
        let rows = (0..self.ncols)
            .map(|j| self.rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        Self {
            rows,
            ncols: self.nrows(),
        }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vector> {
        if v.len() != self.ncols {
            return Err(Error::DimensionMismatch {
                expected: self.ncols,
                found: v.len(),
            });
        }
        Ok(self.rows.iter().map(|r| dot(r, v)).collect())
    }

    /// Exact determinant by Bareiss elimination.
    pub fn det(&self) -> Result<Rational> {
        let n = self.nrows();
        if n != self.ncols {
            return Err(Error::NotSquare {
                rows: n,
                cols: self.ncols,
            });
        }
        if n == 0 {
            return Ok(rat(1));
        }
        // Clear denominators row by row, remembering the scale.
        let mut scale = BigInt::one();
        let mut a: Vec<Vec<BigInt>> = self
            .rows
            .iter()
            .map(|r| {
                let l = lcm_of_denominators(r);
                let row = r.iter().map(|x| (x * &l).to_integer()).collect();
                scale *= l;
                row
            })
            .collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(rat(0)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(Rational::new(sign * &a[n - 1][n - 1], scale))
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut a = self.rows.clone();
        let m = a.len();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.ncols {
            if r >= m {
                break;
            }
            let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(p, r);
            let inv = a[r][c].recip();
            for x in a[r].iter_mut() {
                *x *= &inv;
            }
            let pivot_row = a[r].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i != r && !row[c].is_zero() {
                    let f = row[c].clone();
                    for (x, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                        *x -= &f * p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        a.truncate(m);
        (
            Matrix {
                rows: a,
                ncols: self.ncols,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, one vector per free column.
    pub fn nullspace_basis(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.ncols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![rat(0); self.ncols];
                v[free] = rat(1);
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.rows[row][free].clone();
                }
                v
            })
            .collect()
    }

    /// One solution of `self * x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Result<Option<Vector>> {
        if b.len() != self.nrows() {
            return Err(Error::DimensionMismatch {
                expected: self.nrows(),
                found: b.len(),
            });
        }
        let aug = Matrix {
            rows: self
                .rows
                .iter()
                .zip(b)
                .map(|(r, bi)| {
                    let mut r = r.clone();
                    r.push(bi.clone());
                    r
                })
                .collect(),
            ncols: self.ncols + 1,
        };
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.ncols) {
            return Ok(None);
        }
        let mut x = vec![rat(0); self.ncols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.rows[row][self.ncols].clone();
        }
        Ok(Some(x))
    }
}

/// Rank of a list of vectors of common length `dim`.
pub fn rank_of(vectors: &[Vector], dim: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix {
        rows: vectors.to_vec(),
        ncols: dim,
    }
    .rank()
}

/// Basis of `{x : v·x = 0 for all v}` in dimension `dim`.
pub fn orthogonal_complement(vectors: &[Vector], dim: usize) -> Vec<Vector> {
    Matrix {
        rows: vectors.to_vec(),
        ncols: dim,
    }
    .nullspace_basis()
}

/// Canonical basis of the span: nonzero rows of the RREF.
pub fn canonical_span_basis(vectors: &[Vector], dim: usize) -> Vec<Vector> {
    let (r, pivots) = Matrix {
        rows: vectors.to_vec(),
        ncols: dim,
    }
    .rref();
    r.rows.into_iter().take(pivots.len()).collect()
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cofactor_det(m: &[Vec<Rational>]) -> Rational {
        let n = m.len();
        if n == 0 {
            return rat(1);
        }
        if n == 1 {
            return m[0][0].clone();
        }
        let mut total = rat(0);
        for j in 0..n {
            let minor: Vec<Vec<Rational>> = m[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(k, _)| k != j)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let term = &m[0][j] * cofactor_det(&minor);
            if j % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix {
        Matrix::new(
            (0..rows)
                .map(|_| (0..cols).map(|_| rat(rng.gen_range(-5..=5))).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn det_small_cases() {
        assert_eq!(Matrix::identity(3).det().unwrap(), rat(1));
        let m = Matrix::from_i64(&[&[1, 1], &[-1, 1]]).unwrap();
        assert_eq!(m.det().unwrap(), rat(2));
        assert!(matches!(
            Matrix::zeros(2, 3).det(),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn det_matches_cofactor_expansion() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let m = random_matrix(&mut rng, 4, 4);
            assert_eq!(m.det().unwrap(), cofactor_det(m.rows()));
        }
        // rational entries go through the denominator-clearing path
        let m = Matrix::new(vec![
            vec![ratio(1, 2), ratio(-2, 3), rat(1)],
            vec![ratio(3, 7), rat(0), ratio(5, 4)],
            vec![rat(2), ratio(1, 9), ratio(-1, 5)],
        ])
        .unwrap();
        assert_eq!(m.det().unwrap(), cofactor_det(m.rows()));
    }

    #[test]
    fn rank_cases() {
        assert_eq!(Matrix::zeros(3, 4).rank(), 0);
        assert_eq!(Matrix::identity(5).rank(), 5);
        assert_eq!(
            Matrix::from_i64(&[&[1, 2, 3], &[1, 2, 3]]).unwrap().rank(),
            1
        );
    }

    #[test]
    fn nullspace_cases() {
        assert!(Matrix::identity(3).nullspace_basis().is_empty());
        let m = Matrix::from_i64(&[&[1, 1, 1]]).unwrap();
        let n = m.nullspace_basis();
        assert_eq!(n.len(), 2);
        for v in &n {
            assert_eq!(dot(m.row(0), v), rat(0));
        }
        assert_eq!(rank_of(&n, 3), 2);
    }

    #[test]
    fn nullspace_of_random_low_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for r in 0..4 {
            // (5 x r) * (r x 6) has rank r with probability one
            let a = random_matrix(&mut rng, 5, r);
            let b = random_matrix(&mut rng, r, 6);
            let rows: Vec<Vector> = (0..5)
                .map(|i| {
                    (0..6)
                        .map(|j| (0..r).map(|k| a.get(i, k) * b.get(k, j)).sum())
                        .collect()
                })
                .collect();
            let m = Matrix::new(rows).unwrap();
            let rank = m.rank();
            let n = m.nullspace_basis();
            assert_eq!(n.len(), 6 - rank);
            for v in &n {
                assert!(is_zero_vector(&m.mul_vec(v).unwrap()));
            }
        }
    }

    #[test]
    fn solve_cases() {
        let b = vector(&[3, -1, 2]);
        assert_eq!(Matrix::identity(3).solve(&b).unwrap(), Some(b));
        let m = Matrix::from_i64(&[&[1, 0], &[1, 0]]).unwrap();
        assert_eq!(m.solve(&vector(&[1, 2])).unwrap(), None);
        assert!(m.solve(&vector(&[1])).is_err());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut solved = 0;
        while solved < 10 {
            let m = random_matrix(&mut rng, 4, 4);
            if m.det().unwrap().is_zero() {
                continue;
            }
            let b: Vector = (0..4).map(|_| rat(rng.gen_range(-9..=9))).collect();
            let x = m.solve(&b).unwrap().unwrap();
            assert_eq!(m.mul_vec(&x).unwrap(), b);
            solved += 1;
        }
    }

    #[test]
    fn primitive_clears_denominators() {
        let v = vec![rat(1), ratio(1, 2), ratio(1, 3)];
        assert_eq!(primitive(&v).unwrap(), vector(&[6, 3, 2]));
        assert_eq!(
            primitive(&vector(&[0, -4, 6])).unwrap(),
            vector(&[0, -2, 3])
        );
        assert!(primitive(&vector(&[0, 0])).is_err());
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3/6").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("-7").unwrap(), rat(-7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    fn small_matrix(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        prop::collection::vec(prop::collection::vec(-6i64..=6, n), n)
    }

    proptest! {
        #[test]
        fn row_swap_negates_det(rows in small_matrix(4), i in 0usize..4, j in 0usize..4) {
            prop_assume!(i != j);
            let m = Matrix::new(rows.iter().map(|r| vector(r)).collect()).unwrap();
            let mut swapped = rows.clone();
            swapped.swap(i, j);
            let s = Matrix::new(swapped.iter().map(|r| vector(r)).collect()).unwrap();
            prop_assert_eq!(m.det().unwrap(), -s.det().unwrap());
        }

        #[test]
        fn rank_nullity(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 5), 0..6)) {
            let m = if rows.is_empty() {
                Matrix::empty(5)
            } else {
                Matrix::new(rows.iter().map(|r| vector(r)).collect()).unwrap()
            };
            let n = m.nullspace_basis();
            prop_assert_eq!(m.rank() + n.len(), 5);
            for v in &n {
                for r in m.rows() {
                    prop_assert!(dot(r, v).is_zero());
                }
            }
        }
    }
}
