//! Exhaustive enumeration of all solutions `f : S² → carrier` of an
//! equation instance.
//!
//! Each quadruple `(x, y, z, w)` is the pair of pair indices `u = (x, z)`,
//! `v = (y, w)` and references the four cells `u`, `v`, `u + v` and
//! `u + π(v)`. Cells are assigned in ascending pair-index order and every
//! constraint is checked once, right after the last of its cells is
//! assigned.
//!
//! The seeded variant first merges cells that every solution provably
//! agrees on:
//!
//! * d'Alembert and quadratic: `f(π(u)) = f(u)`;
//! * Jensen: `f(u + v + π(v)) = f(u)`.
//!
//! Search variables are then the merged classes, ordered by their smallest
//! cell, so both variants enumerate in the same lexicographic order.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{Carrier, Elem, EquationInstance, EquationKind, TableFun2};

/// Default node budget for command-line runs.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

const FLUSH_EVERY: u64 = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("search budget of {budget} nodes exceeded ({partial} solutions found before stopping)")]
    BudgetExceeded { budget: u64, partial: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    /// All solutions in lexicographic order.
    pub solutions: Vec<TableFun2>,
    /// Number of (variable, value) assignments tried.
    pub nodes: u64,
    /// Number of search variables (cells, or merged classes when seeded).
    pub variables: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    pub budget: u64,
    pub seeded: bool,
    /// Split the search over the first variable's values across threads.
    pub parallel: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            budget: DEFAULT_BUDGET,
            seeded: false,
            parallel: true,
        }
    }
}

/// All solutions, searching cell by cell.
pub fn brute_force(inst: &EquationInstance, budget: u64) -> Result<SolveOutcome, SolveError> {
    solve(
        inst,
        SolverConfig {
            budget,
            seeded: false,
            parallel: true,
        },
    )
}

/// All solutions, searching over the classes of [`seed_classes`].
pub fn seeded_brute_force(inst: &EquationInstance, budget: u64) -> Result<SolveOutcome, SolveError> {
    solve(
        inst,
        SolverConfig {
            budget,
            seeded: true,
            parallel: true,
        },
    )
}

pub fn solve(inst: &EquationInstance, config: SolverConfig) -> Result<SolveOutcome, SolveError> {
    let classes = if config.seeded {
        seed_classes(inst)
    } else {
        (0..inst.cells()).collect()
    };
    let problem = Problem::new(inst, classes);
    problem.run(config)
}

/// Class index of every cell after merging the cells that the derived
/// identities force to be equal. Class ids are numbered by smallest member.
pub fn seed_classes(inst: &EquationInstance) -> Vec<usize> {
    let n = inst.cells();
    let p = inst.square();
    let pi = inst.pair_involution();
    let mut uf = UnionFind::new(n);
    match inst.kind() {
        EquationKind::DAlembert | EquationKind::Quadratic => {
            for u in 0..n {
                uf.union(u, pi.apply(u));
            }
        }
        EquationKind::Jensen => {
            for v in 0..n {
                let period = p.op(v, pi.apply(v));
                for u in 0..n {
                    uf.union(u, p.op(u, period));
                }
            }
        }
    }
    let mut ids = vec![usize::MAX; n];
    let mut class = vec![0; n];
    let mut next = 0;
    for (u, slot) in class.iter_mut().enumerate() {
        let root = uf.find(u);
        if ids[root] == usize::MAX {
            ids[root] = next;
            next += 1;
        }
        *slot = ids[root];
    }
    class
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// A constraint over search variables: `f(p1) + f(p2) = rhs(f(u), f(v))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Constraint {
    u: u32,
    v: u32,
    p1: u32,
    p2: u32,
}

struct Problem<'a> {
    inst: &'a EquationInstance,
    carrier: &'a Carrier,
    kind: EquationKind,
    class: Vec<usize>,
    variables: usize,
    triggers: Vec<Vec<Constraint>>,
}

impl<'a> Problem<'a> {
    fn new(inst: &'a EquationInstance, class: Vec<usize>) -> Self {
        let n = inst.cells();
        let p = inst.square();
        let pi = inst.pair_involution();
        let kind = inst.kind();
        let variables = class.iter().max().map_or(0, |m| m + 1);
        let mut all = Vec::with_capacity(n * n);
        for u in 0..n {
            for v in 0..n {
                let c = Constraint {
                    u: class[u] as u32,
                    // Jensen's right side ignores v
                    v: if kind == EquationKind::Jensen {
                        class[u] as u32
                    } else {
                        class[v] as u32
                    },
                    p1: class[p.op(u, v)] as u32,
                    p2: class[p.op(u, pi.apply(v))] as u32,
                };
                all.push(c);
            }
        }
        all.sort_unstable();
        all.dedup();
        let mut triggers = vec![Vec::new(); variables];
        for c in all {
            let last = c.u.max(c.v).max(c.p1).max(c.p2) as usize;
            triggers[last].push(c);
        }
        Problem {
            inst,
            carrier: inst.carrier(),
            kind,
            class,
            variables,
            triggers,
        }
    }

    #[inline]
    fn holds(&self, vals: &[Elem], c: Constraint) -> bool {
        let k = self.carrier;
        let lhs = k.add(vals[c.p1 as usize], vals[c.p2 as usize]);
        let fu = vals[c.u as usize];
        let rhs = match self.kind {
            EquationKind::DAlembert => k.double(k.mul(fu, vals[c.v as usize])),
            EquationKind::Jensen => k.double(fu),
            EquationKind::Quadratic => k.double(k.add(fu, vals[c.v as usize])),
        };
        lhs == rhs
    }

    fn consistent(&self, vals: &[Elem], var: usize) -> bool {
        self.triggers[var].iter().all(|&c| self.holds(vals, c))
    }

    fn to_table(&self, vals: &[Elem]) -> TableFun2 {
        let values = self.class.iter().map(|&c| vals[c]).collect();
        TableFun2::new(self.inst.side(), values).expect("cells = side²")
    }

    fn run(&self, config: SolverConfig) -> Result<SolveOutcome, SolveError> {
        let shared = Budget {
            limit: config.budget,
            spent: AtomicU64::new(0),
            exhausted: AtomicBool::new(false),
        };
        let order = self.carrier.order();
        let branch = |first: Elem| {
            let mut w = Worker {
                vals: vec![0; self.variables],
                local: 0,
                out: Vec::new(),
                budget: &shared,
            };
            w.tick();
            w.vals[0] = first;
            if self.consistent(&w.vals, 0) {
                self.search(&mut w, 1);
            }
            w.flush();
            w.out
        };
        let parts: Vec<Vec<Vec<Elem>>> = if config.parallel {
            (0..order).into_par_iter().map(branch).collect()
        } else {
            (0..order).map(branch).collect()
        };
        let nodes = shared.spent.load(Ordering::Relaxed);
        let found: usize = parts.iter().map(Vec::len).sum();
        if shared.exhausted.load(Ordering::Relaxed) || nodes > config.budget {
            return Err(SolveError::BudgetExceeded {
                budget: config.budget,
                partial: found,
            });
        }
        let mut solutions: Vec<TableFun2> = parts
            .into_iter()
            .flatten()
            .map(|vals| self.to_table(&vals))
            .collect();
        solutions.sort();
        Ok(SolveOutcome {
            solutions,
            nodes,
            variables: self.variables,
        })
    }

    fn search(&self, w: &mut Worker<'_>, var: usize) {
        if var == self.variables {
            w.out.push(w.vals.clone());
            return;
        }
        if w.budget.exhausted.load(Ordering::Relaxed) {
            return;
        }
        for value in self.carrier.elements() {
            if !w.tick() {
                return;
            }
            w.vals[var] = value;
            if self.consistent(&w.vals, var) {
                self.search(w, var + 1);
            }
        }
    }
}

struct Budget {
    limit: u64,
    spent: AtomicU64,
    exhausted: AtomicBool,
}

struct Worker<'b> {
    vals: Vec<Elem>,
    local: u64,
    out: Vec<Vec<Elem>>,
    budget: &'b Budget,
}

impl Worker<'_> {
    /// Counts one node; returns false once the shared budget is spent.
    #[inline]
    fn tick(&mut self) -> bool {
        self.local += 1;
        if self.local >= FLUSH_EVERY {
            self.flush();
        }
        !self.budget.exhausted.load(Ordering::Relaxed)
    }

    fn flush(&mut self) {
        let total = self.budget.spent.fetch_add(self.local, Ordering::Relaxed) + self.local;
        self.local = 0;
        if total > self.budget.limit {
            self.budget.exhausted.store(true, Ordering::Relaxed);
        }
    }
}
