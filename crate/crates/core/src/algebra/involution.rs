//! Involutive endomorphisms of a finite semigroup and their action on pairs.

use thiserror::Error;

use super::semigroup::FiniteSemigroup;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvolutionError {
    #[error("map has {found} entries, semigroup has {expected} elements")]
    WrongLength { found: usize, expected: usize },
    #[error("image {value} of {x} is outside the semigroup")]
    OutOfRange { x: usize, value: usize },
    #[error("map is not involutive at {x}")]
    NotInvolutive { x: usize },
    #[error("map does not respect {x}+{y}")]
    NotHomomorphic { x: usize, y: usize },
    #[error("negation needs a group")]
    NotAGroup,
}

/// An endomorphism `σ` with `σ(σ(x)) = x`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Involution {
    map: Vec<usize>,
}

impl Involution {
    pub fn new(s: &FiniteSemigroup, map: Vec<usize>) -> Result<Self, InvolutionError> {
        let n = s.size();
        if map.len() != n {
            return Err(InvolutionError::WrongLength {
                found: map.len(),
                expected: n,
            });
        }
        if let Some((x, &value)) = map.iter().enumerate().find(|(_, &v)| v >= n) {
            return Err(InvolutionError::OutOfRange { x, value });
        }
        if let Some(x) = (0..n).find(|&x| map[map[x]] != x) {
            return Err(InvolutionError::NotInvolutive { x });
        }
        for x in 0..n {
            for y in x..n {
                if map[s.op(x, y)] != s.op(map[x], map[y]) {
                    return Err(InvolutionError::NotHomomorphic { x, y });
                }
            }
        }
        Ok(Involution { map })
    }

    pub fn identity(s: &FiniteSemigroup) -> Self {
        Involution {
            map: (0..s.size()).collect(),
        }
    }

    /// `x ↦ -x`; an involution of every abelian group.
    pub fn negation(s: &FiniteSemigroup) -> Result<Self, InvolutionError> {
        if !s.is_group() {
            return Err(InvolutionError::NotAGroup);
        }
        let map = (0..s.size())
            .map(|x| s.inverse(x).expect("groups have inverses"))
            .collect();
        Ok(Involution { map })
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn size(&self) -> usize {
        self.map.len()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &x)| i == x)
    }
}

/// All involutions of `s`, in lexicographic order of their maps.
///
/// Backtracks over the images `σ(0), σ(1), ...`, rejecting a partial map as
/// soon as a constraint whose elements are all assigned fails.
pub fn enumerate_involutions(s: &FiniteSemigroup) -> Vec<Involution> {
    let n = s.size();
    // constraints[i]: pairs (x, y) whose largest index among x, y, x+y is i
    let mut constraints = vec![Vec::new(); n];
    for x in 0..n {
        for y in x..n {
            let top = x.max(y).max(s.op(x, y));
            constraints[top].push((x, y));
        }
    }
    let mut out = Vec::new();
    let mut map = vec![usize::MAX; n];
    extend_involution(s, &constraints, &mut map, 0, &mut out);
    out
}

fn extend_involution(
    s: &FiniteSemigroup,
    constraints: &[Vec<(usize, usize)>],
    map: &mut Vec<usize>,
    i: usize,
    out: &mut Vec<Involution>,
) {
    let n = s.size();
    if i == n {
        out.push(Involution { map: map.clone() });
        return;
    }
    'candidates: for v in 0..n {
        map[i] = v;
        // σσ = id on the assigned prefix
        if v <= i && map[v] != i {
            continue;
        }
        if (0..i).any(|j| map[j] == i && v != j) {
            continue;
        }
        for &(x, y) in &constraints[i] {
            if map[s.op(x, y)] != s.op(map[x], map[y]) {
                continue 'candidates;
            }
        }
        extend_involution(s, constraints, map, i + 1, out);
    }
    map[i] = usize::MAX;
}

/// The componentwise map `(x, z) ↦ (σ(x), τ(z))` on pair indices `x·n + z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairInvolution {
    side: usize,
    map: Vec<usize>,
}

pub fn square_pair_involution(sigma: &Involution, tau: &Involution) -> PairInvolution {
    assert_eq!(sigma.size(), tau.size(), "σ and τ act on the same semigroup");
    let n = sigma.size();
    let map = (0..n * n)
        .map(|u| sigma.apply(u / n) * n + tau.apply(u % n))
        .collect();
    PairInvolution { side: n, map }
}

impl PairInvolution {
    #[inline]
    pub fn apply(&self, u: usize) -> usize {
        self.map[u]
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }
}
