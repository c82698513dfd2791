//! HLT-style coset enumeration with full coincidence handling.
//!
//! The machine sweeps every live coset against every relator, filling gaps
//! by defining new cosets, and repeats sweeps until a pass changes nothing.
//! Coincidences merge through a union-find with queued row transfers.
//!
//! `max_cosets` bounds the total number of cosets ever defined, merged ones
//! included, which guarantees termination. When the budget runs out a
//! deduction-only lookahead runs to a fixpoint; the table is still complete
//! if that closes every slot. Otherwise the result comes back with
//! `is_complete() == false`, which means the budget ran out, never that the
//! index is infinite.

use super::table::{letter_col, CosetTable};
use super::EnumeratorError;
use crate::presentations::{Presentation, Word};
use std::collections::VecDeque;

const UNDEF: usize = usize::MAX;

/// Enumerates cosets of `<subgroup>` in the presented group. Complete tables
/// are standardized (BFS numbering); check `is_complete` before trusting the
/// index.
pub fn todd_coxeter(
    p: &Presentation,
    subgroup: &[Word],
    max_cosets: usize,
) -> Result<CosetTable, EnumeratorError> {
    if max_cosets == 0 {
        return Err(EnumeratorError::ZeroBudget);
    }
    for w in subgroup {
        if let Some(m) = w.max_gen() {
            if m >= p.n_gens() {
                return Err(EnumeratorError::UndeclaredGenerator { index: m, n_gens: p.n_gens() });
            }
        }
    }
    let to_cols = |w: &Word| -> Vec<usize> { w.letters().iter().map(|&l| letter_col(l)).collect() };
    let rel_cols: Vec<Vec<usize>> = p.relators().iter().map(to_cols).collect();
    let sub_cols: Vec<Vec<usize>> = subgroup.iter().map(to_cols).filter(|w| !w.is_empty()).collect();

    let mut m = Machine::new(2 * p.n_gens(), max_cosets);
    let complete = loop {
        m.dirty = false;
        match m.sweep(&sub_cols, &rel_cols) {
            Ok(()) => {
                if !m.dirty {
                    break true;
                }
            }
            Err(BudgetHit) => {
                // no definitions left, ever; close what deductions alone can
                loop {
                    m.dirty = false;
                    m.lookahead(&sub_cols, &rel_cols);
                    if !m.dirty {
                        break;
                    }
                }
                // at the fixpoint a fully defined table has every scan closed
                break m.fully_defined();
            }
        }
    };
    Ok(m.extract(p, subgroup, complete))
}

struct BudgetHit;

struct Machine {
    n_cols: usize,
    rows: Vec<Vec<usize>>,
    parent: Vec<usize>,
    dead_queue: VecDeque<usize>,
    max_cosets: usize,
    dirty: bool,
}

impl Machine {
    fn new(n_cols: usize, max_cosets: usize) -> Machine {
        Machine {
            n_cols,
            rows: vec![vec![UNDEF; n_cols]],
            parent: vec![0],
            dead_queue: VecDeque::new(),
            max_cosets,
            dirty: false,
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn get(&mut self, c: usize, col: usize) -> usize {
        let c = self.find(c);
        let t = self.rows[c][col];
        if t == UNDEF {
            UNDEF
        } else {
            let r = self.find(t);
            self.rows[c][col] = r;
            r
        }
    }

    fn define(&mut self) -> Option<usize> {
        if self.rows.len() >= self.max_cosets {
            return None;
        }
        let id = self.rows.len();
        self.rows.push(vec![UNDEF; self.n_cols]);
        self.parent.push(id);
        self.dirty = true;
        Some(id)
    }

    fn merge(&mut self, a: usize, b: usize) {
        let a = self.find(a);
        let b = self.find(b);
        if a == b {
            return;
        }
        let (keep, drop) = if a < b { (a, b) } else { (b, a) };
        self.parent[drop] = keep;
        self.dirty = true;
        self.dead_queue.push_back(drop);
    }

    /// Transfers rows of dead cosets onto their representatives, queueing any
    /// further coincidences that surface. Column injectivity makes each
    /// clash a coincidence of sources or targets. Dead rows are never
    /// mutated after death; each records true edges between classes.
    fn process_coincidences(&mut self) {
        while let Some(gamma) = self.dead_queue.pop_front() {
            for col in 0..self.n_cols {
                let delta = self.rows[gamma][col];
                if delta == UNDEF {
                    continue;
                }
                // impose the edge class(gamma) -col-> class(delta) on the
                // live reps; any disagreement on either side is itself a
                // coincidence, and each merge kills a coset so this stops
                let mut mu = self.find(gamma);
                let mut nu = self.find(delta);
                loop {
                    mu = self.find(mu);
                    nu = self.find(nu);
                    let fwd = self.get(mu, col);
                    if fwd != UNDEF && fwd != nu {
                        self.merge(fwd, nu);
                        continue;
                    }
                    let back = self.get(nu, col ^ 1);
                    if back != UNDEF && back != mu {
                        self.merge(back, mu);
                        continue;
                    }
                    break;
                }
                mu = self.find(mu);
                nu = self.find(nu);
                // write both halves so neither direction is left dangling
                if self.rows[mu][col] != nu {
                    self.rows[mu][col] = nu;
                    self.dirty = true;
                }
                if self.rows[nu][col ^ 1] != mu {
                    self.rows[nu][col ^ 1] = mu;
                    self.dirty = true;
                }
            }
        }
    }

    fn set_pair(&mut self, c: usize, col: usize, d: usize) {
        let c = self.find(c);
        let d = self.find(d);
        self.rows[c][col] = d;
        self.dirty = true;
        let r = self.rows[d][col ^ 1];
        if r == UNDEF {
            self.rows[d][col ^ 1] = c;
        } else {
            let r = self.find(r);
            if r != c {
                // column maps are injective: same target forces same source
                self.merge(r, c);
                self.process_coincidences();
            }
        }
    }

    /// Traces `w` from `start`, forcing closure. Forward and backward scans
    /// meet either exactly (possible coincidence), with a gap of one
    /// (deduction), or with a wider gap (define, when filling is allowed).
    fn scan(&mut self, start: usize, w: &[usize], fill: bool) -> Result<(), BudgetHit> {
        let mut f = self.find(start);
        let mut i = 0;
        let mut b = f;
        let mut j = w.len();
        loop {
            while i < j {
                let t = self.get(f, w[i]);
                if t == UNDEF {
                    break;
                }
                f = t;
                i += 1;
            }
            if i == j {
                let f = self.find(f);
                let b = self.find(b);
                if f != b {
                    self.merge(f, b);
                    self.process_coincidences();
                }
                return Ok(());
            }
            while j > i {
                let t = self.get(b, w[j - 1] ^ 1);
                if t == UNDEF {
                    break;
                }
                b = t;
                j -= 1;
            }
            if j == i {
                let f = self.find(f);
                let b = self.find(b);
                if f != b {
                    self.merge(f, b);
                    self.process_coincidences();
                }
                return Ok(());
            }
            if j == i + 1 {
                self.set_pair(f, w[i], b);
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            match self.define() {
                Some(d) => {
                    self.set_pair(f, w[i], d);
                }
                None => return Err(BudgetHit),
            }
        }
    }

    fn sweep(&mut self, sub: &[Vec<usize>], rels: &[Vec<usize>]) -> Result<(), BudgetHit> {
        for w in sub {
            self.scan(0, w, true)?;
        }
        let mut alpha = 0;
        while alpha < self.rows.len() {
            if self.find(alpha) != alpha {
                alpha += 1;
                continue;
            }
            for r in rels {
                self.scan(alpha, r, true)?;
                if self.find(alpha) != alpha {
                    break;
                }
            }
            if self.find(alpha) == alpha {
                for col in 0..self.n_cols {
                    if self.get(alpha, col) == UNDEF {
                        match self.define() {
                            Some(d) => self.set_pair(alpha, col, d),
                            None => return Err(BudgetHit),
                        }
                    }
                }
            }
            alpha += 1;
        }
        Ok(())
    }

    fn fully_defined(&mut self) -> bool {
        for c in 0..self.rows.len() {
            if self.parent[c] != c {
                continue;
            }
            for col in 0..self.n_cols {
                if self.get(c, col) == UNDEF {
                    return false;
                }
            }
        }
        true
    }

    fn lookahead(&mut self, sub: &[Vec<usize>], rels: &[Vec<usize>]) {
        for w in sub {
            let _ = self.scan(0, w, false);
        }
        let mut alpha = 0;
        while alpha < self.rows.len() {
            if self.find(alpha) == alpha {
                for r in rels {
                    let _ = self.scan(alpha, r, false);
                    if self.find(alpha) != alpha {
                        break;
                    }
                }
            }
            alpha += 1;
        }
    }

    fn extract(mut self, p: &Presentation, subgroup: &[Word], complete: bool) -> CosetTable {
        let live: Vec<usize> = (0..self.rows.len()).filter(|&c| self.parent[c] == c).collect();
        let mut new_of = vec![UNDEF; self.rows.len()];
        for (new, &old) in live.iter().enumerate() {
            new_of[old] = new;
        }
        let rows: Vec<Vec<Option<usize>>> = live
            .iter()
            .map(|&old| {
                (0..self.n_cols)
                    .map(|col| {
                        let t = self.get(old, col);
                        if t == UNDEF {
                            None
                        } else {
                            Some(new_of[t])
                        }
                    })
                    .collect()
            })
            .collect();
        let mut t = CosetTable::from_parts(p.clone(), subgroup.to_vec(), rows, complete);
        if complete {
            t.standardize();
        }
        t
    }
}
