//! Integer lattices: row-style Hermite normal form, membership and kernels.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("vector has length {got}, expected {expected}")]
    Dimension { expected: usize, got: usize },
    #[error("integer overflow during lattice reduction")]
    Overflow,
}

/// A sublattice of `Zⁿ` stored as an echelon basis with positive pivots and
/// entries above each pivot reduced into `[0, pivot)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    basis: Vec<Vec<i128>>,
}

impl Lattice {
    pub fn zero(dim: usize) -> Self {
        Lattice { dim, basis: Vec::new() }
    }

    pub fn span(dim: usize, vectors: &[Vec<i64>]) -> Result<Self, LatticeError> {
        let rows: Vec<Vec<i128>> = vectors
            .iter()
            .map(|v| {
                if v.len() != dim {
                    Err(LatticeError::Dimension { expected: dim, got: v.len() })
                } else {
                    Ok(v.iter().map(|&x| x as i128).collect())
                }
            })
            .collect::<Result<_, _>>()?;
        Ok(Lattice { dim, basis: hermite(rows, dim)? })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> Vec<Vec<i64>> {
        self.basis.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect()
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        if v.len() != self.dim {
            return false;
        }
        let mut rest: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        for row in &self.basis {
            let p = pivot(row).expect("basis rows are nonzero");
            if rest[p] % row[p] != 0 {
                return false;
            }
            let q = rest[p] / row[p];
            for (r, b) in rest.iter_mut().zip(row) {
                *r -= q * b;
            }
        }
        rest.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &Lattice) -> Result<Lattice, LatticeError> {
        let rows = self.basis.iter().chain(&other.basis).cloned().collect();
        Ok(Lattice { dim: self.dim, basis: hermite(rows, self.dim)? })
    }
}

fn pivot(row: &[i128]) -> Option<usize> {
    row.iter().position(|&x| x != 0)
}

/// Row-reduces to Hermite normal form, dropping zero rows.
fn hermite(mut rows: Vec<Vec<i128>>, dim: usize) -> Result<Vec<Vec<i128>>, LatticeError> {
    let mut out: Vec<Vec<i128>> = Vec::new();
    for col in 0..dim {
        // gcd-combine all rows with a nonzero entry in `col` into one
        loop {
            let mut live: Vec<usize> =
                (0..rows.len()).filter(|&i| pivot(&rows[i]) == Some(col)).collect();
            if live.len() <= 1 {
                break;
            }
            live.sort_by_key(|&i| rows[i][col].abs());
            let small = live[0];
            for &i in &live[1..] {
                let q = rows[i][col].div_euclid(rows[small][col]);
                let (a, b) = (rows[i].clone(), rows[small].clone());
                for (k, x) in rows[i].iter_mut().enumerate() {
                    *x = a[k].checked_sub(q.checked_mul(b[k]).ok_or(LatticeError::Overflow)?)
                        .ok_or(LatticeError::Overflow)?;
                }
            }
            rows.retain(|r| pivot(r).is_some());
        }
        if let Some(i) = rows.iter().position(|r| pivot(r) == Some(col)) {
            let mut row = rows.swap_remove(i);
            if row[col] < 0 {
                row.iter_mut().for_each(|x| *x = -*x);
            }
            out.push(row);
        }
        rows.retain(|r| pivot(r).is_some());
    }
    for i in 0..out.len() {
        let p = pivot(&out[i]).expect("nonzero");
        for j in 0..i {
            let q = out[j][p].div_euclid(out[i][p]);
            if q != 0 {
                let row = out[i].clone();
                for (x, y) in out[j].iter_mut().zip(&row) {
                    *x -= q * y;
                }
            }
        }
    }
    Ok(out)
}

/// Basis of `{v ∈ Zⁿ : M v = 0}` for an integer matrix given by its rows.
pub fn integer_kernel(rows: &[Vec<i64>], n: usize) -> Result<Lattice, LatticeError> {
    let m = rows.len();
    // augmented rows [Mᵀ e_j | e_j]; unimodular row operations keep the right block a basis
    let augmented: Vec<Vec<i128>> = (0..n)
        .map(|j| {
            let mut r: Vec<i128> = rows.iter().map(|row| row[j] as i128).collect();
            r.extend((0..n).map(|k| i128::from(k == j)));
            r
        })
        .collect();
    let reduced = hermite(augmented, m + n)?;
    let kernel: Vec<Vec<i64>> = reduced
        .into_iter()
        .filter(|r| r[..m].iter().all(|&x| x == 0))
        .map(|r| r[m..].iter().map(|&x| x as i64).collect())
        .collect();
    Lattice::span(n, &kernel)
}
