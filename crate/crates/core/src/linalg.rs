//! Exact sparse Gaussian elimination over the rationals.
//!
//! Constraint systems in this crate have a few nonzero coefficients per row
//! and up to a couple of thousand unknowns, so rows are kept sparse and
//! inserted one at a time into an echelon basis.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::Rational;

/// Sparse row: column → nonzero coefficient.
pub type SparseRow = BTreeMap<usize, Rational>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Insert {
    /// The row raised the rank.
    Independent,
    /// The row was a combination of earlier rows (with a compatible
    /// right-hand side).
    Redundant,
    /// The row reduced to `0 = c` with `c ≠ 0`.
    Inconsistent(Rational),
}

/// Row echelon basis of a (possibly inhomogeneous) linear system.
///
/// Each stored row has leading coefficient 1 at its pivot column and no
/// entries left of it.
#[derive(Debug, Clone)]
pub struct Echelon {
    ncols: usize,
    rows: BTreeMap<usize, (SparseRow, Rational)>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Self {
            ncols,
            rows: BTreeMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn nullity(&self) -> usize {
        self.ncols - self.rank()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Adds the equation `Σ row[c]·x_c = rhs`.
    pub fn insert(&mut self, mut row: SparseRow, mut rhs: Rational) -> Insert {
        row.retain(|_, v| !v.is_zero());
        loop {
            let Some((&lead, _)) = row.iter().next() else {
                return if rhs.is_zero() {
                    Insert::Redundant
                } else {
                    Insert::Inconsistent(rhs)
                };
            };
            assert!(lead < self.ncols, "column {lead} out of range");
            match self.rows.get(&lead) {
                Some((pivot_row, pivot_rhs)) => {
                    let factor = row[&lead].clone();
                    for (c, v) in pivot_row {
                        let entry = row.entry(*c).or_insert_with(Rational::zero);
                        *entry -= &factor * v;
                        if entry.is_zero() {
                            row.remove(c);
                        }
                    }
                    rhs -= factor * pivot_rhs;
                }
                None => {
                    let inv = row[&lead].recip();
                    for v in row.values_mut() {
                        *v *= &inv;
                    }
                    rhs *= inv;
                    self.rows.insert(lead, (row, rhs));
                    return Insert::Independent;
                }
            }
        }
    }

    pub fn insert_homogeneous(&mut self, row: SparseRow) -> Insert {
        self.insert(row, Rational::zero())
    }

    /// Back-substitutes with the given values for the free columns.
    fn back_substitute(&self, free: impl Fn(usize) -> Rational) -> Vec<Rational> {
        let mut x: Vec<Option<Rational>> = (0..self.ncols)
            .map(|c| (!self.rows.contains_key(&c)).then(|| free(c)))
            .collect();
        for (&pivot, (row, rhs)) in self.rows.iter().rev() {
            let mut value = rhs.clone();
            for (c, v) in row.range(pivot + 1..) {
                value -= v * x[*c].as_ref().expect("later columns solved first");
            }
            x[pivot] = Some(value);
        }
        x.into_iter().map(|v| v.expect("all columns solved")).collect()
    }

    /// A solution with every free column set to zero. Only meaningful when no
    /// insert reported [`Insert::Inconsistent`].
    pub fn particular_solution(&self) -> Vec<Rational> {
        self.back_substitute(|_| Rational::zero())
    }

    /// Basis of the solution space of the homogeneous system, one vector per
    /// free column (that column set to 1, the other free columns to 0).
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let homogeneous = Echelon {
            ncols: self.ncols,
            rows: self
                .rows
                .iter()
                .map(|(k, (r, _))| (*k, (r.clone(), Rational::zero())))
                .collect(),
        };
        (0..self.ncols)
            .filter(|c| !self.rows.contains_key(c))
            .map(|f| {
                homogeneous.back_substitute(|c| {
                    if c == f {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
            })
            .collect()
    }
}

/// Convenience constructor for a sparse row from `(column, coefficient)`
/// pairs; repeated columns are summed.
pub fn row<I: IntoIterator<Item = (usize, i64)>>(entries: I) -> SparseRow {
    let mut r = SparseRow::new();
    for (c, v) in entries {
        *r.entry(c).or_insert_with(Rational::zero) += crate::rat(v);
    }
    r.retain(|_, v| !v.is_zero());
    r
}
