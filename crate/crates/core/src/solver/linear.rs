//! Exact sparse Gaussian elimination with inconsistency certificates.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::scalar::GaussianRational;
use crate::series::Coefficient;
use crate::tensor::{TensorElement, TensorKey};

type SparseRow = BTreeMap<usize, GaussianRational>;

/// One equation: the coefficient of `key` in block `block`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RowKey {
    pub block: usize,
    pub key: TensorKey,
}

/// `A u = b` where column `j` of `A` is the image of `unknowns[j]` and rows
/// are tensor monomials in labelled blocks.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    pub unknowns: Vec<TensorElement>,
    pub block_labels: Vec<String>,
    pub rows: Vec<RowKey>,
    /// Sparse rows of `A`.
    pub matrix: Vec<Vec<(usize, GaussianRational)>>,
    pub rhs: Vec<GaussianRational>,
    zero: TensorElement,
}

impl LinearSystem {
    /// Assembles the system from per-block column images and right-hand
    /// sides. `images[j][b]` is the image of unknown `j` in block `b`; there
    /// must be at least one block.
    pub fn assemble(
        unknowns: Vec<TensorElement>,
        block_labels: Vec<String>,
        images: Vec<Vec<TensorElement>>,
        rhs: Vec<TensorElement>,
    ) -> Self {
        let mut keys: BTreeSet<RowKey> = BTreeSet::new();
        for col in &images {
            for (block, t) in col.iter().enumerate() {
                keys.extend(t.terms().keys().map(|k| RowKey { block, key: k.clone() }));
            }
        }
        for (block, t) in rhs.iter().enumerate() {
            keys.extend(t.terms().keys().map(|k| RowKey { block, key: k.clone() }));
        }
        let rows: Vec<RowKey> = keys.into_iter().collect();
        let index: BTreeMap<&RowKey, usize> = rows.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let mut matrix = vec![Vec::new(); rows.len()];
        for (j, col) in images.iter().enumerate() {
            for (block, t) in col.iter().enumerate() {
                for (k, c) in t.terms() {
                    let r = index[&RowKey { block, key: k.clone() }];
                    matrix[r].push((j, c.clone()));
                }
            }
        }
        let mut b = vec![GaussianRational::zero(); rows.len()];
        for (block, t) in rhs.iter().enumerate() {
            for (k, c) in t.terms() {
                b[index[&RowKey { block, key: k.clone() }]] = c.clone();
            }
        }
        let zero = rhs.first().expect("at least one block").zero_like();
        LinearSystem { unknowns, block_labels, rows, matrix, rhs: b, zero }
    }

    pub fn num_unknowns(&self) -> usize {
        self.unknowns.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// `"block: leg # leg"` for a row.
    pub fn row_label(&self, r: usize) -> String {
        let row = &self.rows[r];
        let body = TensorElement::monomial(self.zero.presentation(), row.key.clone(), GaussianRational::one());
        format!("{}: {}", self.block_labels[row.block], body)
    }

    /// `A x` for a coordinate vector.
    pub fn apply(&self, x: &[GaussianRational]) -> Vec<GaussianRational> {
        self.matrix
            .iter()
            .map(|row| row.iter().fold(GaussianRational::zero(), |acc, (j, a)| &acc + &(a * &x[*j])))
            .collect()
    }

    /// `Σ xⱼ uⱼ`.
    pub fn combine(&self, x: &[GaussianRational]) -> TensorElement {
        let mut acc = self.zero.clone();
        for (u, c) in self.unknowns.iter().zip(x) {
            if !c.is_zero() {
                acc = &acc + &u.scale(c);
            }
        }
        acc
    }
}

/// Result of [`solve_linear`].
#[derive(Clone, Debug, PartialEq)]
pub enum SolveOutcome {
    Solution {
        particular: TensorElement,
        kernel_basis: Vec<TensorElement>,
        particular_coords: Vec<GaussianRational>,
        kernel_coords: Vec<Vec<GaussianRational>>,
    },
    Obstruction {
        /// Sparse row functional `v` with `vA = 0`, first entry `1`.
        certificate: Vec<(usize, GaussianRational)>,
        /// `v·b`, nonzero.
        pairing: GaussianRational,
        /// Labels of the rows in the support of `v`.
        blocked: Vec<String>,
    },
}

impl SolveOutcome {
    pub fn is_solution(&self) -> bool {
        matches!(self, SolveOutcome::Solution { .. })
    }
}

/// Exact residues from re-checking an outcome against its system.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verification {
    pub passed: bool,
    pub failures: Vec<String>,
}

impl fmt::Display for Verification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed {
            write!(f, "verified")
        } else {
            write!(f, "FAILED: {}", self.failures.join("; "))
        }
    }
}

struct Row {
    entries: SparseRow,
    rhs: GaussianRational,
    combo: SparseRow,
}

fn axpy(target: &mut SparseRow, factor: &GaussianRational, source: &SparseRow) {
    for (k, v) in source {
        let delta = factor * v;
        match target.get_mut(k) {
            Some(x) => {
                *x -= &delta;
                if x.is_zero() {
                    target.remove(k);
                }
            }
            None => {
                target.insert(*k, -&delta);
            }
        }
    }
}

fn normalized_certificate(sys: &LinearSystem, row: &Row) -> SolveOutcome {
    let first = row.combo.values().next().expect("nonempty combination").clone();
    let scale = first.inv().expect("nonzero");
    let certificate: Vec<(usize, GaussianRational)> = row.combo.iter().map(|(k, v)| (*k, v * &scale)).collect();
    let pairing = &row.rhs * &scale;
    let blocked = certificate.iter().map(|(r, _)| sys.row_label(*r)).collect();
    SolveOutcome::Obstruction { certificate, pairing, blocked }
}

/// Gaussian elimination over the Gaussian rationals.
///
/// Columns are eliminated in order; the pivot for a column is the active
/// row with the fewest entries, ties broken by row index. A row reduced to
/// `0 = c ≠ 0` yields the certificate from its recorded combination of
/// original rows.
pub fn solve_linear(sys: &LinearSystem) -> SolveOutcome {
    let ncols = sys.num_unknowns();
    let mut rows: Vec<Row> = sys
        .matrix
        .iter()
        .zip(&sys.rhs)
        .enumerate()
        .map(|(i, (m, b))| Row {
            entries: m.iter().cloned().collect(),
            rhs: b.clone(),
            combo: SparseRow::from([(i, GaussianRational::one())]),
        })
        .collect();
    if let Some(r) = rows.iter().position(|r| r.entries.is_empty() && !r.rhs.is_zero()) {
        return normalized_certificate(sys, &rows[r]);
    }
    let mut by_col: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncols];
    for (i, r) in rows.iter().enumerate() {
        for &c in r.entries.keys() {
            by_col[c].insert(i);
        }
    }
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut is_pivot_row = vec![false; rows.len()];
    for col in 0..ncols {
        let candidates: Vec<usize> = by_col[col].iter().copied().filter(|&r| !is_pivot_row[r]).collect();
        let Some(&p) = candidates.iter().min_by_key(|&&r| (rows[r].entries.len(), r)) else {
            continue;
        };
        is_pivot_row[p] = true;
        pivots.push((col, p));
        let pivot_entries = rows[p].entries.clone();
        let pivot_rhs = rows[p].rhs.clone();
        let pivot_combo = rows[p].combo.clone();
        let pivot_inv = pivot_entries[&col].inv().expect("nonzero pivot");
        for &r in &candidates {
            if r == p {
                continue;
            }
            let factor = &rows[r].entries[&col] * &pivot_inv;
            let before: Vec<usize> = rows[r].entries.keys().copied().collect();
            let row = &mut rows[r];
            axpy(&mut row.entries, &factor, &pivot_entries);
            row.rhs -= &(&factor * &pivot_rhs);
            axpy(&mut row.combo, &factor, &pivot_combo);
            for c in before {
                if !row.entries.contains_key(&c) {
                    by_col[c].remove(&r);
                }
            }
            for &c in row.entries.keys() {
                by_col[c].insert(r);
            }
            if row.entries.is_empty() && !row.rhs.is_zero() {
                return normalized_certificate(sys, row);
            }
        }
    }
    back_substitute(sys, &rows, &pivots)
}

fn back_substitute(sys: &LinearSystem, rows: &[Row], pivots: &[(usize, usize)]) -> SolveOutcome {
    let ncols = sys.num_unknowns();
    let pivot_cols: BTreeSet<usize> = pivots.iter().map(|(c, _)| *c).collect();
    let solve_with = |free: Option<usize>, homogeneous: bool| -> Vec<GaussianRational> {
        let mut x = vec![GaussianRational::zero(); ncols];
        if let Some(f) = free {
            x[f] = GaussianRational::one();
        }
        for &(col, r) in pivots.iter().rev() {
            let row = &rows[r];
            let mut acc = if homogeneous { GaussianRational::zero() } else { row.rhs.clone() };
            for (c, a) in row.entries.range(col + 1..) {
                acc -= &(a * &x[*c]);
            }
            x[col] = &acc / &row.entries[&col];
        }
        x
    };
    let particular_coords = solve_with(None, false);
    let kernel_coords: Vec<Vec<GaussianRational>> =
        (0..ncols).filter(|c| !pivot_cols.contains(c)).map(|f| solve_with(Some(f), true)).collect();
    let particular = sys.combine(&particular_coords);
    let kernel_basis = kernel_coords.iter().map(|k| sys.combine(k)).collect();
    SolveOutcome::Solution { particular, kernel_basis, particular_coords, kernel_coords }
}

/// Re-checks an outcome by direct multiplication against `A` and `b`.
pub fn verify_outcome(outcome: &SolveOutcome, sys: &LinearSystem) -> Verification {
    let mut failures = Vec::new();
    match outcome {
        SolveOutcome::Solution { particular, kernel_basis, particular_coords, kernel_coords } => {
            if particular_coords.len() != sys.num_unknowns() {
                failures.push("particular has wrong dimension".to_string());
            } else {
                for (r, (lhs, b)) in sys.apply(particular_coords).iter().zip(&sys.rhs).enumerate() {
                    if lhs != b {
                        failures.push(format!("row {}: {} ≠ {}", sys.row_label(r), lhs, b));
                    }
                }
                if &sys.combine(particular_coords) != particular {
                    failures.push("particular element disagrees with its coordinates".to_string());
                }
            }
            if kernel_basis.len() != kernel_coords.len() {
                failures.push("kernel basis and coordinates differ in length".to_string());
            }
            for (i, k) in kernel_coords.iter().enumerate() {
                if k.len() != sys.num_unknowns() {
                    failures.push(format!("kernel vector {i} has wrong dimension"));
                    continue;
                }
                if let Some(r) = sys.apply(k).iter().position(|v| !v.is_zero()) {
                    failures.push(format!("kernel vector {i} fails row {}", sys.row_label(r)));
                }
                if kernel_basis.get(i) != Some(&sys.combine(k)) {
                    failures.push(format!("kernel element {i} disagrees with its coordinates"));
                }
            }
        }
        SolveOutcome::Obstruction { certificate, pairing, .. } => {
            let mut va = SparseRow::new();
            let mut vb = GaussianRational::zero();
            for (r, v) in certificate {
                if *r >= sys.num_rows() {
                    failures.push(format!("certificate row {r} out of range"));
                    continue;
                }
                for (c, a) in &sys.matrix[*r] {
                    let e = va.entry(*c).or_insert_with(GaussianRational::zero);
                    *e += &(v * a);
                }
                vb += &(v * &sys.rhs[*r]);
            }
            if let Some((c, _)) = va.iter().find(|(_, v)| !v.is_zero()) {
                failures.push(format!("certificate does not annihilate column {c}"));
            }
            if vb.is_zero() {
                failures.push("certificate pairs to zero with the right-hand side".to_string());
            } else if &vb != pairing {
                failures.push(format!("recorded pairing {pairing} differs from recomputed {vb}"));
            }
        }
    }
    Verification { passed: failures.is_empty(), failures }
}
