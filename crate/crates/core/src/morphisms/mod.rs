//! Enumeration of multiplicative functions, additive functions and
//! biadditive forms on `S²`, with the involution sign filters the solution
//! formulas require.
//!
//! The enumerators run a propagating backtracking search (see
//! [`propagate`]); the `is_*` predicates are plain exhaustive checks kept
//! independent of the search.

mod propagate;

use crate::algebra::{Carrier, Elem, FiniteSemigroup, PairInvolution, TableFun2};
use propagate::{Combine, ConstraintNet, Link};

/// How a function must interact with an involution `π` of its domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Default)]
pub enum PairCondition {
    #[default]
    Unconstrained,
    /// `a(π(u)) = -a(u)`
    AntiSymmetric,
    /// `a(π(u)) = a(u)`
    Symmetric,
}

/// Filter argument of [`enumerate_additive`].
#[derive(Debug, Clone, Copy)]
pub enum AdditiveFilter<'a> {
    None,
    AntiSymmetric(&'a PairInvolution),
    Symmetric(&'a PairInvolution),
}

impl AdditiveFilter<'_> {
    fn condition(&self) -> PairCondition {
        match self {
            AdditiveFilter::None => PairCondition::Unconstrained,
            AdditiveFilter::AntiSymmetric(_) => PairCondition::AntiSymmetric,
            AdditiveFilter::Symmetric(_) => PairCondition::Symmetric,
        }
    }

    fn involution(&self) -> Option<&[usize]> {
        match self {
            AdditiveFilter::None => None,
            AdditiveFilter::AntiSymmetric(p) | AdditiveFilter::Symmetric(p) => Some(p.as_slice()),
        }
    }
}

/// `χ : S² → K` with `χ(u + v) = χ(u)·χ(v)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct MultiplicativeFun(TableFun2);

impl MultiplicativeFun {
    /// Checks the law exhaustively.
    pub fn new(s: &FiniteSemigroup, field: &Carrier, table: TableFun2) -> Option<Self> {
        let ok = field.is_field()
            && table.side() == s.size()
            && is_multiplicative(&s.product(s), field, table.values());
        ok.then_some(MultiplicativeFun(table))
    }

    pub fn table(&self) -> &TableFun2 {
        &self.0
    }

    pub fn into_table(self) -> TableFun2 {
        self.0
    }

    /// `m(x) = χ(x, x)`.
    pub fn diagonal(&self) -> Vec<Elem> {
        self.0.diagonal()
    }
}

/// `a : S² → G` with `a(u + v) = a(u) + a(v)`, plus the involution
/// condition it was filtered by.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct AdditiveFun {
    table: TableFun2,
    condition: PairCondition,
}

impl AdditiveFun {
    pub fn table(&self) -> &TableFun2 {
        &self.table
    }

    pub fn into_table(self) -> TableFun2 {
        self.table
    }

    pub fn condition(&self) -> PairCondition {
        self.condition
    }
}

/// `B : S²×S² → H`, additive in each slot; stored row-major as
/// `values[u·|S|² + v] = B(u, v)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct BiadditiveForm {
    side: usize,
    values: Vec<Elem>,
    symmetric: bool,
    sign_condition: bool,
}

impl BiadditiveForm {
    /// Validates biadditivity and the requested conditions exhaustively.
    pub fn new(
        s: &FiniteSemigroup,
        carrier: &Carrier,
        values: Vec<Elem>,
        symmetric: bool,
        sign: Option<&PairInvolution>,
    ) -> Option<Self> {
        let p = s.product(s);
        let n = p.size();
        if values.len() != n * n || !is_biadditive(&p, carrier, &values) {
            return None;
        }
        if symmetric && !is_symmetric_form(n, &values) {
            return None;
        }
        if let Some(pi) = sign {
            if !has_sign_condition(carrier, pi.as_slice(), &values) {
                return None;
            }
        }
        Some(BiadditiveForm {
            side: s.size(),
            values,
            symmetric,
            sign_condition: sign.is_some(),
        })
    }

    /// Number of pairs, i.e. `|S|²`.
    pub fn pairs(&self) -> usize {
        self.side * self.side
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> Elem {
        self.values[u * self.pairs() + v]
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn has_sign_condition(&self) -> bool {
        self.sign_condition
    }

    /// `u ↦ B(u, u)` as a function on `S²`.
    pub fn quadratic_part(&self) -> TableFun2 {
        let n = self.pairs();
        TableFun2::new(self.side, (0..n).map(|u| self.get(u, u)).collect())
            .expect("pairs = side²")
    }
}

/// All multiplicative `χ : S² → K`, lexicographically ordered.
pub fn enumerate_multiplicative(s: &FiniteSemigroup, field: &Carrier) -> Vec<MultiplicativeFun> {
    multiplicative_maps(&s.product(s), field)
        .into_iter()
        .map(|v| MultiplicativeFun(TableFun2::new(s.size(), v).expect("cells = side²")))
        .collect()
}

/// All additive `a : S² → G` passing `filter`, lexicographically ordered.
pub fn enumerate_additive(
    s: &FiniteSemigroup,
    group: &Carrier,
    filter: AdditiveFilter<'_>,
) -> Vec<AdditiveFun> {
    let p = s.product(s);
    let condition = filter.condition();
    let identity: Vec<usize> = (0..p.size()).collect();
    let map = filter.involution().unwrap_or(&identity);
    additive_maps(&p, group, condition, map)
        .into_iter()
        .map(|v| AdditiveFun {
            table: TableFun2::new(s.size(), v).expect("cells = side²"),
            condition,
        })
        .collect()
}

/// All biadditive `B : S²×S² → H` with the requested conditions,
/// lexicographically ordered by value table.
pub fn enumerate_biadditive(
    s: &FiniteSemigroup,
    group: &Carrier,
    require_symmetric: bool,
    require_sign: Option<&PairInvolution>,
) -> Vec<BiadditiveForm> {
    let p = s.product(s);
    biadditive_maps(&p, group, require_symmetric, require_sign.map(|pi| pi.as_slice()))
        .into_iter()
        .map(|values| BiadditiveForm {
            side: s.size(),
            values,
            symmetric: require_symmetric,
            sign_condition: require_sign.is_some(),
        })
        .collect()
}

/// Semigroup homomorphisms `domain → (K, ·)` as value tables.
pub fn multiplicative_maps(domain: &FiniteSemigroup, field: &Carrier) -> Vec<Vec<Elem>> {
    assert!(field.is_field(), "multiplicative maps need a field carrier");
    let n = domain.size();
    let mut net = ConstraintNet::new(n, field, Combine::Mul);
    for u in 0..n {
        for v in u..n {
            net.triple(u, v, domain.op(u, v));
        }
    }
    net.solutions()
}

/// Semigroup homomorphisms `domain → (G, +)` satisfying `condition` with
/// respect to the involution `map` of the domain.
pub fn additive_maps(
    domain: &FiniteSemigroup,
    group: &Carrier,
    condition: PairCondition,
    map: &[usize],
) -> Vec<Vec<Elem>> {
    let n = domain.size();
    let mut net = ConstraintNet::new(n, group, Combine::Add);
    for u in 0..n {
        for v in u..n {
            net.triple(u, v, domain.op(u, v));
        }
    }
    let link = match condition {
        PairCondition::Unconstrained => None,
        PairCondition::AntiSymmetric => Some(Link::Negate),
        PairCondition::Symmetric => Some(Link::Same),
    };
    if let Some(link) = link {
        for (u, &image) in map.iter().enumerate() {
            if image >= u {
                net.link(u, image, link);
            }
        }
    }
    net.solutions()
}

/// Biadditive forms on `domain × domain`, optionally symmetric and
/// satisfying `B(π(u), v) = -B(u, v)` for the involution `sign`.
pub fn biadditive_maps(
    domain: &FiniteSemigroup,
    group: &Carrier,
    symmetric: bool,
    sign: Option<&[usize]>,
) -> Vec<Vec<Elem>> {
    let n = domain.size();
    let idx = |u: usize, v: usize| u * n + v;
    let mut net = ConstraintNet::new(n * n, group, Combine::Add);
    for w in 0..n {
        for u in 0..n {
            for v in u..n {
                let s = domain.op(u, v);
                net.triple(idx(u, w), idx(v, w), idx(s, w));
                net.triple(idx(w, u), idx(w, v), idx(w, s));
            }
        }
    }
    if symmetric {
        for u in 0..n {
            for v in u + 1..n {
                net.link(idx(u, v), idx(v, u), Link::Same);
            }
        }
    }
    if let Some(pi) = sign {
        for (u, &image) in pi.iter().enumerate() {
            if image >= u {
                for v in 0..n {
                    net.link(idx(u, v), idx(image, v), Link::Negate);
                }
            }
        }
    }
    net.solutions()
}

/// Exhaustive check of `χ(u + v) = χ(u)·χ(v)`.
pub fn is_multiplicative(domain: &FiniteSemigroup, field: &Carrier, values: &[Elem]) -> bool {
    let n = domain.size();
    values.len() == n
        && (0..n).all(|u| {
            (0..n).all(|v| values[domain.op(u, v)] == field.mul(values[u], values[v]))
        })
}

/// Exhaustive check of `a(u + v) = a(u) + a(v)`.
pub fn is_additive(domain: &FiniteSemigroup, group: &Carrier, values: &[Elem]) -> bool {
    let n = domain.size();
    values.len() == n
        && (0..n).all(|u| {
            (0..n).all(|v| values[domain.op(u, v)] == group.add(values[u], values[v]))
        })
}

/// Exhaustive check of `a(π(u)) = ±a(u)` as selected by `condition`.
pub fn satisfies_condition(
    group: &Carrier,
    map: &[usize],
    values: &[Elem],
    condition: PairCondition,
) -> bool {
    (0..values.len()).all(|u| match condition {
        PairCondition::Unconstrained => true,
        PairCondition::AntiSymmetric => values[map[u]] == group.neg(values[u]),
        PairCondition::Symmetric => values[map[u]] == values[u],
    })
}

/// Exhaustive check of additivity in both slots.
pub fn is_biadditive(domain: &FiniteSemigroup, group: &Carrier, values: &[Elem]) -> bool {
    let n = domain.size();
    if values.len() != n * n {
        return false;
    }
    let b = |u: usize, v: usize| values[u * n + v];
    (0..n).all(|u| {
        (0..n).all(|v| {
            (0..n).all(|w| {
                b(domain.op(u, v), w) == group.add(b(u, w), b(v, w))
                    && b(w, domain.op(u, v)) == group.add(b(w, u), b(w, v))
            })
        })
    })
}

pub fn is_symmetric_form(pairs: usize, values: &[Elem]) -> bool {
    (0..pairs).all(|u| (0..pairs).all(|v| values[u * pairs + v] == values[v * pairs + u]))
}

/// Exhaustive check of `B(π(u), v) = -B(u, v)`.
pub fn has_sign_condition(group: &Carrier, pi: &[usize], values: &[Elem]) -> bool {
    let n = pi.len();
    (0..n).all(|u| (0..n).all(|v| values[pi[u] * n + v] == group.neg(values[u * n + v])))
}
