//! Coset tables: the action of a presented group on the cosets of a
//! finitely generated subgroup.
//!
//! Coset 0 is the subgroup itself. Columns come in inverse pairs: column
//! `2g` is generator `g`, column `2g+1` its inverse, so `col ^ 1` flips a
//! letter. A complete table is a genuine permutation action; an incomplete
//! one (budget ran out) is a partial table that must never be read as a
//! nonexistence result.

use super::perm::{Perm, PermGroup};
use crate::presentations::{Letter, Presentation, Word};
use serde_json::json;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TableError {
    #[error("table is not complete")]
    Incomplete,
    #[error("inverse closure broken at coset {coset}, column {col}")]
    InverseClosure { coset: usize, col: usize },
    #[error("relator {relator} does not close at coset {coset}")]
    RelatorOpen { relator: usize, coset: usize },
    #[error("subgroup generator {index} moves coset 0")]
    SubgroupMoved { index: usize },
    #[error("coset {0} out of range")]
    BadCoset(usize),
}

pub fn letter_col(l: Letter) -> usize {
    2 * l.gen + l.inv as usize
}

#[derive(Clone, Debug)]
pub struct CosetTable {
    presentation: Presentation,
    subgroup_generators: Vec<Word>,
    rows: Vec<Vec<Option<usize>>>,
    complete: bool,
}

impl CosetTable {
    pub(crate) fn from_parts(
        presentation: Presentation,
        subgroup_generators: Vec<Word>,
        rows: Vec<Vec<Option<usize>>>,
        complete: bool,
    ) -> CosetTable {
        let n_cols = 2 * presentation.n_gens();
        debug_assert!(rows.iter().all(|r| r.len() == n_cols));
        let t = CosetTable { presentation, subgroup_generators, rows, complete };
        debug_assert_eq!(t.check_inverse_closure(), Ok(()));
        t
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn subgroup_generators(&self) -> &[Word] {
        &self.subgroup_generators
    }

    pub fn n_cosets(&self) -> usize {
        self.rows.len()
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn apply(&self, coset: usize, l: Letter) -> Option<usize> {
        self.rows[coset][letter_col(l)]
    }

    pub fn trace(&self, coset: usize, w: &Word) -> Option<usize> {
        let mut c = coset;
        for &l in w.letters() {
            c = self.apply(c, l)?;
        }
        Some(c)
    }

    fn check_inverse_closure(&self) -> Result<(), TableError> {
        for (c, row) in self.rows.iter().enumerate() {
            for (col, &entry) in row.iter().enumerate() {
                if let Some(d) = entry {
                    if d >= self.rows.len() {
                        return Err(TableError::BadCoset(d));
                    }
                    if self.rows[d][col ^ 1] != Some(c) {
                        return Err(TableError::InverseClosure { coset: c, col });
                    }
                }
            }
        }
        Ok(())
    }

    /// Full validity check: inverse closure always; on complete tables also
    /// totality, relator closure at every coset, and subgroup generators
    /// fixing coset 0.
    pub fn verify(&self) -> Result<(), TableError> {
        self.check_inverse_closure()?;
        if !self.complete {
            return Ok(());
        }
        for (c, row) in self.rows.iter().enumerate() {
            if row.iter().any(|e| e.is_none()) {
                return Err(TableError::InverseClosure { coset: c, col: 0 });
            }
        }
        for (ri, r) in self.presentation.relators().iter().enumerate() {
            for c in 0..self.rows.len() {
                if self.trace(c, r) != Some(c) {
                    return Err(TableError::RelatorOpen { relator: ri, coset: c });
                }
            }
        }
        for (i, w) in self.subgroup_generators.iter().enumerate() {
            if self.trace(0, w) != Some(0) {
                return Err(TableError::SubgroupMoved { index: i });
            }
        }
        Ok(())
    }

    /// Renumbers cosets into BFS discovery order from coset 0, visiting
    /// columns g0, g0^-1, g1, ... This is the canonical numbering all
    /// deterministic output relies on.
    pub fn standardize(&mut self) {
        let n = self.rows.len();
        let mut order: Vec<usize> = Vec::with_capacity(n);
        let mut new_of = vec![usize::MAX; n];
        order.push(0);
        new_of[0] = 0;
        let mut head = 0;
        while head < order.len() {
            let c = order[head];
            head += 1;
            for col in 0..2 * self.presentation.n_gens() {
                if let Some(d) = self.rows[c][col] {
                    if new_of[d] == usize::MAX {
                        new_of[d] = order.len();
                        order.push(d);
                    }
                }
            }
        }
        // cosets unreachable from 0 keep relative order after the reached ones
        for c in 0..n {
            if new_of[c] == usize::MAX {
                new_of[c] = order.len();
                order.push(c);
            }
        }
        let rows = order
            .iter()
            .map(|&old| {
                self.rows[old]
                    .iter()
                    .map(|e| e.map(|d| new_of[d]))
                    .collect()
            })
            .collect();
        self.rows = rows;
    }

    /// The generator images as permutations of the cosets (complete only).
    pub fn permutation_images(&self) -> Result<Vec<Perm>, TableError> {
        if !self.complete {
            return Err(TableError::Incomplete);
        }
        let n = self.rows.len();
        (0..self.presentation.n_gens())
            .map(|g| {
                let images: Vec<usize> = (0..n)
                    .map(|c| self.rows[c][2 * g].expect("complete table"))
                    .collect();
                Perm::from_images(images).map_err(|_| TableError::InverseClosure { coset: 0, col: 2 * g })
            })
            .collect()
    }

    pub fn permutation_group(&self) -> Result<PermGroup, TableError> {
        Ok(PermGroup::new(self.n_cosets(), self.permutation_images()?))
    }

    /// Flattened row-major entries with `usize::MAX` for blanks; the sort
    /// key used for canonical ordering of search results.
    pub fn flat_key(&self) -> Vec<usize> {
        self.rows
            .iter()
            .flat_map(|r| r.iter().map(|e| e.unwrap_or(usize::MAX)))
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let table: Vec<Vec<serde_json::Value>> = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|e| match e {
                        Some(d) => json!(d),
                        None => serde_json::Value::Null,
                    })
                    .collect()
            })
            .collect();
        let subgroup: Vec<String> = self
            .subgroup_generators
            .iter()
            .map(|w| self.presentation.word_string(w))
            .collect();
        json!({
            "index": self.rows.len(),
            "complete": self.complete,
            "columns": self.column_names(),
            "table": table,
            "subgroup": subgroup,
        })
    }

    fn column_names(&self) -> Vec<String> {
        let mut out = Vec::new();
        for g in self.presentation.generator_names() {
            out.push(g.to_string());
            out.push(format!("{g}^-1"));
        }
        out
    }
}
