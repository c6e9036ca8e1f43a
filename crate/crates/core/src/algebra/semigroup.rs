//! Finite commutative semigroups given by Cayley tables on `0..n`.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemigroupError {
    #[error("semigroup must have at least one element")]
    Empty,
    #[error("Cayley table row {row} has {found} entries, expected {expected}")]
    BadShape {
        row: usize,
        found: usize,
        expected: usize,
    },
    #[error("table has {found} rows, expected {expected}")]
    BadRowCount { found: usize, expected: usize },
    #[error("entry {a}+{b} = {value} is outside 0..{size}")]
    EntryOutOfRange {
        a: usize,
        b: usize,
        value: usize,
        size: usize,
    },
    #[error("not associative: ({a}+{b})+{c} != {a}+({b}+{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("not commutative: {a}+{b} != {b}+{a}")]
    NotCommutative { a: usize, b: usize },
}

/// A validated commutative semigroup on `0..size`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSemigroup {
    size: usize,
    table: Vec<usize>,
    identity: Option<usize>,
    is_group: bool,
}

impl FiniteSemigroup {
    /// Validates an `n×n` Cayley table given as rows.
    pub fn from_rows(n: usize, rows: &[Vec<usize>]) -> Result<Self, SemigroupError> {
        if rows.len() != n {
            return Err(SemigroupError::BadRowCount {
                found: rows.len(),
                expected: n,
            });
        }
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(SemigroupError::BadShape {
                    row,
                    found: r.len(),
                    expected: n,
                });
            }
        }
        Self::from_table(n, rows.concat())
    }

    /// Validates a flat row-major table: `table[a*n + b] = a + b`.
    pub fn from_table(n: usize, table: Vec<usize>) -> Result<Self, SemigroupError> {
        if n == 0 {
            return Err(SemigroupError::Empty);
        }
        if table.len() != n * n {
            return Err(SemigroupError::BadRowCount {
                found: table.len() / n,
                expected: n,
            });
        }
        for (i, &value) in table.iter().enumerate() {
            if value >= n {
                return Err(SemigroupError::EntryOutOfRange {
                    a: i / n,
                    b: i % n,
                    value,
                    size: n,
                });
            }
        }
        let op = |a: usize, b: usize| table[a * n + b];
        for a in 0..n {
            for b in a + 1..n {
                if op(a, b) != op(b, a) {
                    return Err(SemigroupError::NotCommutative { a, b });
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if op(op(a, b), c) != op(a, op(b, c)) {
                        return Err(SemigroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        let identity = (0..n).find(|&e| (0..n).all(|x| op(e, x) == x));
        let is_group = identity.is_some_and(|e| (0..n).all(|x| (0..n).any(|y| op(x, y) == e)));
        Ok(FiniteSemigroup {
            size: n,
            table,
            identity,
            is_group,
        })
    }

    /// `Z_n` under addition mod `n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group needs at least one element");
        let table = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        Self::from_table(n, table).expect("Z_n is a commutative group")
    }

    /// `{1, ..., m}` with `a + b := min(a + b, m)`; index `i` stands for `i + 1`.
    ///
    /// For `m ≥ 2` this semigroup has no identity element.
    pub fn truncated_addition(m: usize) -> Self {
        assert!(m >= 1, "truncated addition needs at least one element");
        let table = (0..m * m)
            .map(|i| (i / m + i % m + 2).min(m) - 1)
            .collect();
        Self::from_table(m, table).expect("truncated addition is a commutative semigroup")
    }

    /// Componentwise product; the pair `(a, b)` has index `a * other.size() + b`.
    pub fn product(&self, other: &FiniteSemigroup) -> Self {
        let (n, m) = (self.size, other.size);
        let size = n * m;
        let mut table = Vec::with_capacity(size * size);
        for u in 0..size {
            for v in 0..size {
                let (a, b) = (u / m, u % m);
                let (c, d) = (v / m, v % m);
                table.push(self.op(a, c) * m + other.op(b, d));
            }
        }
        let identity = self
            .identity
            .zip(other.identity)
            .map(|(e, f)| e * m + f);
        FiniteSemigroup {
            size,
            table,
            identity,
            is_group: self.is_group && other.is_group,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size + b]
    }

    pub fn identity(&self) -> Option<usize> {
        self.identity
    }

    pub fn is_group(&self) -> bool {
        self.is_group
    }

    pub fn inverse(&self, a: usize) -> Option<usize> {
        let e = self.identity?;
        (0..self.size).find(|&b| self.op(a, b) == e)
    }

    /// Cayley table rows.
    pub fn rows(&self) -> impl Iterator<Item = &[usize]> {
        self.table.chunks(self.size)
    }
}
