use std::fmt;

use super::carrier::Elem;

/// A total function `f : S×S → carrier`, stored row-major: the value at
/// `(x, z)` lives at index `x·|S| + z`.
///
/// Ordering is lexicographic on the flat value table.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TableFun2 {
    side: usize,
    values: Vec<Elem>,
}

impl TableFun2 {
    /// Returns `None` unless `values.len() == side²`.
    pub fn new(side: usize, values: Vec<Elem>) -> Option<Self> {
        (values.len() == side * side).then_some(TableFun2 { side, values })
    }

    pub fn constant(side: usize, c: Elem) -> Self {
        TableFun2 {
            side,
            values: vec![c; side * side],
        }
    }

    pub fn from_fn(side: usize, mut f: impl FnMut(usize, usize) -> Elem) -> Self {
        let values = (0..side * side).map(|u| f(u / side, u % side)).collect();
        TableFun2 { side, values }
    }

    /// Size of `S`.
    pub fn side(&self) -> usize {
        self.side
    }

    #[inline]
    pub fn get(&self, x: usize, z: usize) -> Elem {
        self.values[x * self.side + z]
    }

    /// Value at a pair index.
    #[inline]
    pub fn at(&self, u: usize) -> Elem {
        self.values[u]
    }

    pub fn set(&mut self, u: usize, value: Elem) {
        self.values[u] = value;
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Elem> {
        self.values
    }

    /// `g(x) = f(x, x)`.
    pub fn diagonal(&self) -> Vec<Elem> {
        (0..self.side).map(|x| self.get(x, x)).collect()
    }
}

impl fmt::Display for TableFun2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.values {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}
