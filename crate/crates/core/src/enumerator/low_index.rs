//! Low-index subgroup enumeration: backtracking over partial coset tables.
//!
//! Every conjugacy class of subgroups of index at most `max_index` is
//! represented by exactly one complete table, the lexicographically least
//! one over all base points. Partial tables are pruned by relator deduction
//! (a forced coincidence kills the branch, since distinct cosets must stay
//! distinct) and by a completion-stable prefix test against each relabeled
//! base. The search introduces cosets in first-use order, so a table is
//! always its own base-0 relabeling and prefix comparisons are meaningful.

use super::rewrite::schreier_generator_words;
use super::table::CosetTable;
use super::EnumeratorError;
use crate::presentations::{Presentation, Word};
use std::collections::VecDeque;

const UNDEF: usize = usize::MAX;

pub fn low_index_subgroups(
    p: &Presentation,
    max_index: usize,
    max_nodes: usize,
) -> Result<Vec<CosetTable>, EnumeratorError> {
    low_index_subgroups_split(p, max_index, max_nodes, 1)
}

/// Like `low_index_subgroups`, but budget exhaustion returns whatever was
/// found so far with `false` instead of an error. The found tables are still
/// canonical and sorted; the list is just possibly missing classes.
pub fn low_index_subgroups_partial(
    p: &Presentation,
    max_index: usize,
    max_nodes: usize,
) -> Result<(Vec<CosetTable>, bool), EnumeratorError> {
    if max_index == 0 || max_nodes == 0 {
        return Err(EnumeratorError::ZeroBudget);
    }
    let shape = Shape {
        n_cols: 2 * p.n_gens(),
        rel_cols: p
            .relators()
            .iter()
            .map(|w| w.letters().iter().map(|&l| super::table::letter_col(l)).collect())
            .collect(),
        max_index,
    };
    let root = vec![vec![UNDEF; shape.n_cols]];
    let mut raw = Vec::new();
    let mut nodes = 0usize;
    let complete = match search(&shape, root, &mut nodes, max_nodes, &mut raw) {
        Ok(()) => true,
        Err(EnumeratorError::NodeBudgetExceeded { .. }) => false,
        Err(e) => return Err(e),
    };
    let mut tables: Vec<CosetTable> = raw.into_iter().map(|rows| assemble(p, rows)).collect();
    tables.sort_by_key(|t| (t.n_cosets(), t.flat_key()));
    Ok((tables, complete))
}

/// Deterministic work splitting: the tree is expanded breadth-first into a
/// frontier, frontier nodes go to parts round-robin, parts run concurrently,
/// and the merged output is sorted into canonical order. The result never
/// depends on `n_parts` or the schedule.
pub fn low_index_subgroups_split(
    p: &Presentation,
    max_index: usize,
    max_nodes: usize,
    n_parts: usize,
) -> Result<Vec<CosetTable>, EnumeratorError> {
    if max_index == 0 || max_nodes == 0 || n_parts == 0 {
        return Err(EnumeratorError::ZeroBudget);
    }
    let shape = Shape {
        n_cols: 2 * p.n_gens(),
        rel_cols: p
            .relators()
            .iter()
            .map(|w| w.letters().iter().map(|&l| super::table::letter_col(l)).collect())
            .collect(),
        max_index,
    };
    let root = vec![vec![UNDEF; shape.n_cols]];

    let mut raw: Vec<Vec<Vec<usize>>> = Vec::new();
    if n_parts == 1 {
        let mut nodes = 0usize;
        search(&shape, root, &mut nodes, max_nodes, &mut raw)?;
    } else {
        let mut frontier = VecDeque::new();
        frontier.push_back(root);
        let mut nodes = 0usize;
        expand_frontier(&shape, &mut frontier, 4 * n_parts, &mut nodes, max_nodes, &mut raw)?;
        let budget = max_nodes - nodes;
        let mut buckets: Vec<Vec<Vec<Vec<usize>>>> = vec![Vec::new(); n_parts];
        for (i, node) in frontier.into_iter().enumerate() {
            buckets[i % n_parts].push(node);
        }
        let outcomes: Vec<Result<Vec<Vec<Vec<usize>>>, EnumeratorError>> =
            std::thread::scope(|scope| {
                let handles: Vec<_> = buckets
                    .into_iter()
                    .map(|bucket| {
                        let shape = &shape;
                        scope.spawn(move || {
                            let mut found = Vec::new();
                            let mut nodes = 0usize;
                            for node in bucket {
                                search(shape, node, &mut nodes, budget, &mut found)?;
                            }
                            Ok(found)
                        })
                    })
                    .collect();
                handles.into_iter().map(|h| h.join().expect("search panicked")).collect()
            });
        for outcome in outcomes {
            raw.extend(outcome?);
        }
    }

    let mut tables: Vec<CosetTable> = raw.into_iter().map(|rows| assemble(p, rows)).collect();
    tables.sort_by_key(|t| (t.n_cosets(), t.flat_key()));
    Ok(tables)
}

struct Shape {
    n_cols: usize,
    rel_cols: Vec<Vec<usize>>,
    max_index: usize,
}

enum Scan {
    Dead,
    Progress,
    Quiet,
}

fn set_pair(rows: &mut [Vec<usize>], f: usize, col: usize, b: usize) -> Scan {
    let cur = rows[f][col];
    if cur != UNDEF {
        return if cur == b { Scan::Quiet } else { Scan::Dead };
    }
    let back = rows[b][col ^ 1];
    if back != UNDEF && back != f {
        return Scan::Dead;
    }
    rows[f][col] = b;
    rows[b][col ^ 1] = f;
    Scan::Progress
}

fn scan(rows: &mut [Vec<usize>], start: usize, w: &[usize]) -> Scan {
    let mut f = start;
    let mut i = 0;
    let mut b = start;
    let mut j = w.len();
    while i < j && rows[f][w[i]] != UNDEF {
        f = rows[f][w[i]];
        i += 1;
    }
    if i == j {
        return if f == b { Scan::Quiet } else { Scan::Dead };
    }
    while j > i && rows[b][w[j - 1] ^ 1] != UNDEF {
        b = rows[b][w[j - 1] ^ 1];
        j -= 1;
    }
    if j == i {
        return if f == b { Scan::Quiet } else { Scan::Dead };
    }
    if j == i + 1 {
        return set_pair(rows, f, w[i], b);
    }
    Scan::Quiet
}

/// Relator deductions to a fixpoint. False means the branch is dead.
fn fixpoint(shape: &Shape, rows: &mut Vec<Vec<usize>>) -> bool {
    loop {
        let mut changed = false;
        for c in 0..rows.len() {
            for r in &shape.rel_cols {
                match scan(rows, c, r) {
                    Scan::Dead => return false,
                    Scan::Progress => changed = true,
                    Scan::Quiet => {}
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

/// Compares the base-`base` relabeling against the table itself, walking the
/// relabeled rows in order and stopping at the first undefined entry on
/// either side (completions can only extend the walk, so a strict win seen
/// before any gap survives completion). True means prune.
fn relabel_beats(rows: &[Vec<usize>], n_cols: usize, base: usize) -> bool {
    let n = rows.len();
    let mut old_of_new = vec![base];
    let mut new_of_old = vec![UNDEF; n];
    new_of_old[base] = 0;
    let mut r = 0;
    while r < old_of_new.len() {
        for col in 0..n_cols {
            let raw = rows[old_of_new[r]][col];
            let own = rows[r][col];
            if raw == UNDEF || own == UNDEF {
                return false;
            }
            let val = if new_of_old[raw] == UNDEF {
                new_of_old[raw] = old_of_new.len();
                old_of_new.push(raw);
                old_of_new.len() - 1
            } else {
                new_of_old[raw]
            };
            if val != own {
                return val < own;
            }
        }
        r += 1;
    }
    false
}

fn first_undef(rows: &[Vec<usize>], n_cols: usize) -> Option<(usize, usize)> {
    for (c, row) in rows.iter().enumerate() {
        for col in 0..n_cols {
            if row[col] == UNDEF {
                return Some((c, col));
            }
        }
    }
    None
}

enum Step {
    Dead,
    Complete,
    Branch(usize, usize),
}

fn settle(shape: &Shape, rows: &mut Vec<Vec<usize>>) -> Step {
    if !fixpoint(shape, rows) {
        return Step::Dead;
    }
    for base in 1..rows.len() {
        if relabel_beats(rows, shape.n_cols, base) {
            return Step::Dead;
        }
    }
    match first_undef(rows, shape.n_cols) {
        None => Step::Complete,
        Some((c, col)) => Step::Branch(c, col),
    }
}

fn branch_targets(shape: &Shape, rows: &[Vec<usize>], col: usize) -> Vec<usize> {
    let n = rows.len();
    let mut targets: Vec<usize> =
        (0..n).filter(|&d| rows[d][col ^ 1] == UNDEF).collect();
    if n < shape.max_index {
        targets.push(n);
    }
    targets
}

fn search(
    shape: &Shape,
    mut rows: Vec<Vec<usize>>,
    nodes: &mut usize,
    max_nodes: usize,
    out: &mut Vec<Vec<Vec<usize>>>,
) -> Result<(), EnumeratorError> {
    match settle(shape, &mut rows) {
        Step::Dead => Ok(()),
        Step::Complete => {
            out.push(rows);
            Ok(())
        }
        Step::Branch(c, col) => {
            for d in branch_targets(shape, &rows, col) {
                *nodes += 1;
                if *nodes > max_nodes {
                    return Err(EnumeratorError::NodeBudgetExceeded { max_nodes });
                }
                let mut next = rows.clone();
                if d == rows.len() {
                    next.push(vec![UNDEF; shape.n_cols]);
                }
                next[c][col] = d;
                next[d][col ^ 1] = c;
                search(shape, next, nodes, max_nodes, out)?;
            }
            Ok(())
        }
    }
}

/// Breadth-first expansion until the queue holds `want` open nodes (or the
/// whole tree is exhausted); completed tables found on the way are emitted.
fn expand_frontier(
    shape: &Shape,
    frontier: &mut VecDeque<Vec<Vec<usize>>>,
    want: usize,
    nodes: &mut usize,
    max_nodes: usize,
    out: &mut Vec<Vec<Vec<usize>>>,
) -> Result<(), EnumeratorError> {
    while frontier.len() < want {
        let Some(mut rows) = frontier.pop_front() else { break };
        match settle(shape, &mut rows) {
            Step::Dead => {}
            Step::Complete => out.push(rows),
            Step::Branch(c, col) => {
                for d in branch_targets(shape, &rows, col) {
                    *nodes += 1;
                    if *nodes > max_nodes {
                        return Err(EnumeratorError::NodeBudgetExceeded { max_nodes });
                    }
                    let mut next = rows.clone();
                    if d == rows.len() {
                        next.push(vec![UNDEF; shape.n_cols]);
                    }
                    next[c][col] = d;
                    next[d][col ^ 1] = c;
                    frontier.push_back(next);
                }
            }
        }
    }
    Ok(())
}

fn assemble(p: &Presentation, rows: Vec<Vec<usize>>) -> CosetTable {
    let opt: Vec<Vec<Option<usize>>> = rows
        .iter()
        .map(|row| row.iter().map(|&v| Some(v)).collect())
        .collect();
    let bare = CosetTable::from_parts(p.clone(), Vec::new(), opt.clone(), true);
    let gens: Vec<Word> = schreier_generator_words(&bare).expect("complete table");
    CosetTable::from_parts(p.clone(), gens, opt, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::{corpus, parse_presentation};

    #[test]
    fn cyclic_classes() {
        let z = parse_presentation("gens a\n").unwrap();
        let found = low_index_subgroups(&z, 3, 10_000).unwrap();
        assert_eq!(found.len(), 3);
        let indices: Vec<usize> = found.iter().map(|t| t.n_cosets()).collect();
        assert_eq!(indices, vec![1, 2, 3]);
        for t in &found {
            assert!(t.verify().is_ok());
        }
    }

    #[test]
    fn free_two_to_index_two() {
        let f = Presentation::free(2);
        let found = low_index_subgroups(&f, 2, 10_000).unwrap();
        assert_eq!(found.len(), 4);
        assert_eq!(found.iter().filter(|t| t.n_cosets() == 2).count(), 3);
    }

    #[test]
    fn index_two_count_matches_epimorphism_formula() {
        // index-2 subgroups are kernels of maps onto Z/2: 2^k - 1 of them
        for k in 1..=4usize {
            let f = Presentation::free(k);
            let found = low_index_subgroups(&f, 2, 1_000_000).unwrap();
            assert_eq!(found.len() - 1, (1 << k) - 1, "free({})", k);
        }
    }

    #[test]
    fn free_two_class_counts_by_index() {
        // classes of subgroups of free(2) of index exactly n
        let want = [1usize, 3, 7, 26, 97, 624];
        let found = low_index_subgroups(&Presentation::free(2), 6, 50_000_000).unwrap();
        for (i, &w) in want.iter().enumerate() {
            let n = i + 1;
            assert_eq!(
                found.iter().filter(|t| t.n_cosets() == n).count(),
                w,
                "index {}",
                n
            );
        }
        assert_eq!(found.len(), want.iter().sum::<usize>());
    }

    #[test]
    fn prefix_consistency() {
        let p = corpus::get("triangle(2,3,3)").unwrap().presentation;
        let big = low_index_subgroups(&p, 6, 1_000_000).unwrap();
        let small = low_index_subgroups(&p, 4, 1_000_000).unwrap();
        let big_restricted: Vec<_> = big.iter().filter(|t| t.n_cosets() <= 4).collect();
        assert_eq!(big_restricted.len(), small.len());
        for (a, b) in big_restricted.iter().zip(&small) {
            assert_eq!(a.flat_key(), b.flat_key());
        }
    }

    #[test]
    fn split_matches_sequential() {
        let p = corpus::get("triangle(2,3,5)").unwrap().presentation;
        let seq = low_index_subgroups(&p, 6, 1_000_000).unwrap();
        for parts in [2, 3, 5] {
            let par = low_index_subgroups_split(&p, 6, 1_000_000, parts).unwrap();
            assert_eq!(seq.len(), par.len(), "{} parts", parts);
            for (a, b) in seq.iter().zip(&par) {
                assert_eq!(a.flat_key(), b.flat_key());
            }
        }
    }

    #[test]
    fn tables_are_canonical_and_verified() {
        let p = corpus::get("triangle(2,3,3)").unwrap().presentation;
        let found = low_index_subgroups(&p, 6, 1_000_000).unwrap();
        // A4: subgroup classes of index 1,2,3,4,6 -> 1 + 0 + 1 + 1 + 1(V4 index 3)...
        // verified below just structurally, the exact census is covered by
        // the quotient spectrum tests
        assert!(!found.is_empty());
        for t in &found {
            assert!(t.verify().is_ok());
            assert!(t.is_complete());
            // canonical: no relabeling beats the table
            let rows: Vec<Vec<usize>> = (0..t.n_cosets())
                .map(|c| {
                    (0..2 * p.n_gens())
                        .map(|col| {
                            t.apply(c, crate::presentations::Letter::new(col / 2, col % 2 == 1))
                                .unwrap()
                        })
                        .collect()
                })
                .collect();
            for base in 1..rows.len() {
                assert!(!relabel_beats(&rows, 2 * p.n_gens(), base));
            }
            // schreier generators fix coset 0
            for w in t.subgroup_generators() {
                assert_eq!(t.trace(0, w), Some(0));
            }
        }
    }

    #[test]
    fn node_budget_is_reported() {
        let f = Presentation::free(2);
        assert!(matches!(
            low_index_subgroups(&f, 6, 100),
            Err(EnumeratorError::NodeBudgetExceeded { max_nodes: 100 })
        ));
        assert!(matches!(
            low_index_subgroups(&f, 0, 100),
            Err(EnumeratorError::ZeroBudget)
        ));
    }

    #[test]
    fn whole_group_table_has_generator_words() {
        let p = corpus::get("weeks").unwrap().presentation;
        let found = low_index_subgroups(&p, 1, 1000).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].n_cosets(), 1);
        assert_eq!(found[0].subgroup_generators().len(), p.n_gens());
    }
}
