//! Zero fill-in pivots of a sparse matrix.
//!
//! Eliminating the pivot `(r, c)` makes every entry `(i, j)` with `(i, c)`
//! and `(r, j)` nonzero. No new nonzero appears exactly when the arc
//! `r -> c` is disimplicial in the ST graph of the pattern, so a maximal
//! disimplicial elimination of that graph is a maximal sequence of zero
//! fill-in pivots.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::elimination::maximal_elimination;
use crate::io::SparseMatrixGraph;

/// Zero-based `(row, column)` pivots in elimination order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PivotSequence {
    pub pivots: Vec<(usize, usize)>,
    /// Every nonzero was eliminated.
    pub perfect: bool,
}

pub fn zero_fill_pivots(m: &SparseMatrixGraph) -> PivotSequence {
    let g = m.to_digraph();
    let scheme = maximal_elimination(&g);
    let pivots = scheme
        .steps
        .iter()
        .map(|&arc| m.entry_of(arc).expect("arcs run from rows to columns"))
        .collect();
    PivotSequence { pivots, perfect: scheme.perfect }
}

/// Runs structural Gaussian elimination with the given pivots and returns
/// the number of fill-in entries created. Fails if a pivot is a structural
/// zero or reuses an eliminated row or column.
pub fn structural_fill(m: &SparseMatrixGraph, pivots: &[(usize, usize)]) -> Result<usize, String> {
    let mut rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.rows];
    let mut cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.cols];
    for &(i, j) in &m.entries {
        rows[i].insert(j);
        cols[j].insert(i);
    }
    let mut row_gone = vec![false; m.rows];
    let mut col_gone = vec![false; m.cols];
    let mut fill = 0;
    for &(r, c) in pivots {
        if r >= m.rows || c >= m.cols || row_gone[r] || col_gone[c] {
            return Err(format!("pivot ({r}, {c}) is out of range or already eliminated"));
        }
        if !rows[r].contains(&c) {
            return Err(format!("pivot ({r}, {c}) is a structural zero"));
        }
        let pivot_row: Vec<usize> = rows[r].iter().copied().filter(|&j| j != c).collect();
        let pivot_col: Vec<usize> = cols[c].iter().copied().filter(|&i| i != r).collect();
        for &i in &pivot_col {
            for &j in &pivot_row {
                if rows[i].insert(j) {
                    cols[j].insert(i);
                    fill += 1;
                }
            }
        }
        for j in std::mem::take(&mut rows[r]) {
            cols[j].remove(&r);
        }
        for i in std::mem::take(&mut cols[c]) {
            rows[i].remove(&c);
        }
        row_gone[r] = true;
        col_gone[c] = true;
    }
    Ok(fill)
}
