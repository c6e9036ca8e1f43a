//! Backtracking with forward propagation over cells constrained by
//! `v[c] = v[a] ∘ v[b]` (where `∘` is the carrier's addition or
//! multiplication) and by unary links `v[j] = v[i]` / `v[j] = -v[i]`.
//!
//! Cells are branched in ascending index order and values in ascending
//! order, so solutions come out lexicographically sorted and distinct.

use crate::algebra::{Carrier, Elem};

const UNSET: Elem = Elem::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Combine {
    Add,
    Mul,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Link {
    Same,
    Negate,
}

pub(crate) struct ConstraintNet<'c> {
    carrier: &'c Carrier,
    combine: Combine,
    triples: Vec<[usize; 3]>,
    watch: Vec<Vec<u32>>,
    links: Vec<Vec<(usize, Link)>>,
}

impl<'c> ConstraintNet<'c> {
    pub(crate) fn new(cells: usize, carrier: &'c Carrier, combine: Combine) -> Self {
        ConstraintNet {
            carrier,
            combine,
            triples: Vec::new(),
            watch: vec![Vec::new(); cells],
            links: vec![Vec::new(); cells],
        }
    }

    fn cells(&self) -> usize {
        self.watch.len()
    }

    /// Requires `v[c] = v[a] ∘ v[b]`.
    pub(crate) fn triple(&mut self, a: usize, b: usize, c: usize) {
        let id = self.triples.len() as u32;
        self.triples.push([a, b, c]);
        let mut cells = [a, b, c];
        cells.sort_unstable();
        for (k, &cell) in cells.iter().enumerate() {
            if k == 0 || cells[k - 1] != cell {
                self.watch[cell].push(id);
            }
        }
    }

    /// Requires `v[j] = link(v[i])`; both links used here are involutive,
    /// so the constraint is stored in both directions.
    pub(crate) fn link(&mut self, i: usize, j: usize, link: Link) {
        self.links[i].push((j, link));
        if i != j {
            self.links[j].push((i, link));
        }
    }

    #[inline]
    fn apply(&self, a: Elem, b: Elem) -> Elem {
        match self.combine {
            Combine::Add => self.carrier.add(a, b),
            Combine::Mul => self.carrier.mul(a, b),
        }
    }

    fn set(&self, st: &mut State, cell: usize, value: Elem) -> bool {
        let cur = st.vals[cell];
        if cur == UNSET {
            st.vals[cell] = value;
            st.trail.push(cell);
            st.queue.push(cell);
            true
        } else {
            cur == value
        }
    }

    fn assign(&self, st: &mut State, cell: usize, value: Elem) -> bool {
        st.queue.clear();
        if !self.set(st, cell, value) {
            return false;
        }
        while let Some(c) = st.queue.pop() {
            for &id in &self.watch[c] {
                let [a, b, t] = self.triples[id as usize];
                let (va, vb, vt) = (st.vals[a], st.vals[b], st.vals[t]);
                if va != UNSET && vb != UNSET {
                    if !self.set(st, t, self.apply(va, vb)) {
                        return false;
                    }
                } else if self.combine == Combine::Add && vt != UNSET {
                    // solve for the missing summand
                    if va != UNSET {
                        if !self.set(st, b, self.carrier.sub(vt, va)) {
                            return false;
                        }
                    } else if vb != UNSET && !self.set(st, a, self.carrier.sub(vt, vb)) {
                        return false;
                    }
                }
            }
            let v = st.vals[c];
            for &(j, link) in &self.links[c] {
                let forced = match link {
                    Link::Same => v,
                    Link::Negate => self.carrier.neg(v),
                };
                if !self.set(st, j, forced) {
                    return false;
                }
            }
        }
        true
    }

    /// All total assignments satisfying every constraint.
    pub(crate) fn solutions(&self) -> Vec<Vec<Elem>> {
        let mut st = State {
            vals: vec![UNSET; self.cells()],
            trail: Vec::new(),
            queue: Vec::new(),
        };
        let mut out = Vec::new();
        self.search(&mut st, 0, &mut out);
        out
    }

    fn search(&self, st: &mut State, from: usize, out: &mut Vec<Vec<Elem>>) {
        let Some(cell) = (from..self.cells()).find(|&c| st.vals[c] == UNSET) else {
            out.push(st.vals.clone());
            return;
        };
        for value in self.carrier.elements() {
            let mark = st.trail.len();
            if self.assign(st, cell, value) {
                self.search(st, cell + 1, out);
            }
            for c in st.trail.drain(mark..) {
                st.vals[c] = UNSET;
            }
        }
    }
}

struct State {
    vals: Vec<Elem>,
    trail: Vec<usize>,
    queue: Vec<usize>,
}
