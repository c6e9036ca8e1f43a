//! Coefficient structures: finite fields of odd characteristic and odd-order
//! abelian groups.
//!
//! Every carrier is encoded on the indices `0..order`. The additive group is
//! always a direct sum of cyclic groups `Z_m1 ⊕ Z_m2 ⊕ ...` stored in mixed
//! radix (least significant digit first), so addition, negation and halving
//! are digit-wise for every kind. Fields additionally carry exp/log tables
//! for multiplication.
//!
//! * `GF(p^k)` is `F_p[t]/(g)` for the lexicographically first monic
//!   irreducible `g` of degree `k`; index `Σ c_i p^i` encodes `Σ c_i t^i`.
//! * The quadratic extension of `F_q` is `F_q[s]/(s² - r)` for the smallest
//!   non-square `r`; index `a + b·q` encodes `a + b·s`, so base elements keep
//!   their index inside the extension.

use std::fmt;

use thiserror::Error;

/// A carrier element, encoded as an index in `0..order`.
pub type Elem = u32;

/// Largest carrier order accepted by [`make_carrier`] and by extensions.
pub const MAX_ORDER: u32 = 1 << 16;

/// Orders up to this bound get a precomputed addition table.
const ADD_TABLE_LIMIT: u32 = 1024;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CarrierError {
    #[error("field order {0} has characteristic 2; halving is undefined")]
    EvenCharacteristic(u32),
    #[error("group order {0} is even; doubling is not injective (not 2-cancellative)")]
    EvenOrder(u32),
    #[error("field order {0} is not a prime power")]
    NotPrimePower(u32),
    #[error("carrier order must be at least 1")]
    Empty,
    #[error("carrier order {0} exceeds the supported maximum {MAX_ORDER}")]
    TooLarge(u64),
    #[error("operation requires a field carrier")]
    NotAField,
}

/// Descriptor accepted by [`make_carrier`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CarrierSpec {
    /// The finite field with the given number of elements.
    GaloisField(u32),
    /// The cyclic group `Z_n`.
    ZMod(u32),
    /// `Z_n1 ⊕ Z_n2 ⊕ ...`.
    DirectSum(Vec<u32>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CarrierKind {
    GaloisField { p: u32, degree: u32 },
    ZMod { n: u32 },
    DirectSum { orders: Vec<u32> },
    /// `F_q[s]/(s² - nonresidue)` with `q = p^base_degree`.
    QuadraticExtension { p: u32, base_degree: u32, nonresidue: Elem },
}

#[derive(Debug, Clone)]
struct FieldTables {
    /// `exp[i] = g^i` for a fixed primitive element `g`, `i < order - 1`.
    exp: Vec<Elem>,
    /// Discrete log of every nonzero element; `log[0]` is unused.
    log: Vec<u32>,
}

/// A finite coefficient structure with exact arithmetic.
#[derive(Debug, Clone)]
pub struct Carrier {
    kind: CarrierKind,
    radix: Vec<u32>,
    order: u32,
    add_table: Option<Vec<Elem>>,
    field: Option<FieldTables>,
}

impl PartialEq for Carrier {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for Carrier {}

impl fmt::Display for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            CarrierKind::GaloisField { .. } => write!(f, "GF({})", self.order),
            CarrierKind::ZMod { n } => write!(f, "Z_{n}"),
            CarrierKind::DirectSum { orders } => {
                let parts: Vec<String> = orders.iter().map(|n| format!("Z_{n}")).collect();
                write!(f, "{}", parts.join("+"))
            }
            CarrierKind::QuadraticExtension { p, base_degree, .. } => {
                write!(f, "GF({})", p.pow(2 * base_degree))
            }
        }
    }
}

/// Builds a carrier from its descriptor, rejecting every even order.
pub fn make_carrier(spec: &CarrierSpec) -> Result<Carrier, CarrierError> {
    match spec {
        CarrierSpec::GaloisField(q) => {
            let (p, k) = prime_power(*q).ok_or(CarrierError::NotPrimePower(*q))?;
            if p == 2 {
                return Err(CarrierError::EvenCharacteristic(*q));
            }
            if *q > MAX_ORDER {
                return Err(CarrierError::TooLarge(*q as u64));
            }
            Ok(galois_field(p, k))
        }
        CarrierSpec::ZMod(n) => {
            if *n == 0 {
                return Err(CarrierError::Empty);
            }
            if n % 2 == 0 {
                return Err(CarrierError::EvenOrder(*n));
            }
            if *n > MAX_ORDER {
                return Err(CarrierError::TooLarge(*n as u64));
            }
            Ok(Carrier::from_radix(CarrierKind::ZMod { n: *n }, vec![*n], None))
        }
        CarrierSpec::DirectSum(orders) => {
            if orders.is_empty() || orders.contains(&0) {
                return Err(CarrierError::Empty);
            }
            let total: u64 = orders.iter().map(|&n| n as u64).product();
            if total.is_multiple_of(2) {
                return Err(CarrierError::EvenOrder(total.min(u32::MAX as u64) as u32));
            }
            if total > MAX_ORDER as u64 {
                return Err(CarrierError::TooLarge(total));
            }
            Ok(Carrier::from_radix(
                CarrierKind::DirectSum {
                    orders: orders.clone(),
                },
                orders.clone(),
                None,
            ))
        }
    }
}

/// Returns `(p, k)` with `q = p^k` and `p` prime.
fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

fn galois_field(p: u32, degree: u32) -> Carrier {
    let modulus = first_irreducible(p, degree as usize);
    let radix = vec![p; degree as usize];
    let kind = CarrierKind::GaloisField { p, degree };
    let order = p.pow(degree);
    let slow_mul = |a: Elem, b: Elem| {
        let pa = digits(a, &radix);
        let pb = digits(b, &radix);
        undigits(&poly_mulmod(&pa, &pb, &modulus, p), &radix)
    };
    let tables = field_tables(order, slow_mul);
    Carrier::from_radix(kind, vec![p; degree as usize], Some(tables))
}

/// Lexicographically first monic irreducible polynomial of the given degree,
/// coefficients least significant first (length `degree + 1`).
fn first_irreducible(p: u32, degree: usize) -> Vec<u32> {
    if degree == 1 {
        return vec![0, 1];
    }
    let count = (p as u64).pow(degree as u32);
    for code in 0..count {
        let mut g = vec![0u32; degree + 1];
        let mut c = code;
        for coeff in g.iter_mut().take(degree) {
            *coeff = (c % p as u64) as u32;
            c /= p as u64;
        }
        g[degree] = 1;
        if is_irreducible(&g, p) {
            return g;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn is_irreducible(g: &[u32], p: u32) -> bool {
    let degree = g.len() - 1;
    for d in 1..=degree / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut h = vec![0u32; d + 1];
            let mut c = code;
            for coeff in h.iter_mut().take(d) {
                *coeff = (c % p as u64) as u32;
                c /= p as u64;
            }
            h[d] = 1;
            if poly_rem(g, &h, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Remainder of `a` by the monic polynomial `m`.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = r[r.len() - 1];
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &mc) in m.iter().enumerate() {
                let idx = shift + i;
                r[idx] = (r[idx] + p - (lead * mc) % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn poly_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let mut r = poly_rem(&prod, m, p);
    r.resize(m.len() - 1, 0);
    r
}

fn digits(mut x: Elem, radix: &[u32]) -> Vec<u32> {
    radix
        .iter()
        .map(|&m| {
            let d = x % m;
            x /= m;
            d
        })
        .collect()
}

fn undigits(ds: &[u32], radix: &[u32]) -> Elem {
    ds.iter()
        .zip(radix)
        .rev()
        .fold(0, |acc, (&d, &m)| acc * m + d)
}

/// Finds a primitive element by brute force and tabulates its powers.
fn field_tables(order: u32, mul: impl Fn(Elem, Elem) -> Elem) -> FieldTables {
    let n = order - 1;
    for g in 1..order {
        let mut exp = Vec::with_capacity(n as usize);
        let mut x: Elem = 1;
        loop {
            exp.push(x);
            x = mul(x, g);
            if x == 1 || exp.len() > n as usize {
                break;
            }
        }
        if exp.len() == n as usize {
            let mut log = vec![0u32; order as usize];
            for (i, &e) in exp.iter().enumerate() {
                log[e as usize] = i as u32;
            }
            return FieldTables { exp, log };
        }
    }
    unreachable!("the multiplicative group of a finite field is cyclic")
}

impl Carrier {
    fn from_radix(kind: CarrierKind, radix: Vec<u32>, field: Option<FieldTables>) -> Self {
        let order: u32 = radix.iter().product();
        let mut carrier = Carrier {
            kind,
            radix,
            order,
            add_table: None,
            field,
        };
        if order <= ADD_TABLE_LIMIT {
            let n = order as usize;
            let mut table = vec![0; n * n];
            for a in 0..order {
                for b in 0..order {
                    table[a as usize * n + b as usize] = carrier.add_digits(a, b);
                }
            }
            carrier.add_table = Some(table);
        }
        carrier
    }

    pub fn kind(&self) -> &CarrierKind {
        &self.kind
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_field(&self) -> bool {
        self.field.is_some()
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.order
    }

    pub fn contains(&self, x: Elem) -> bool {
        x < self.order
    }

    pub fn zero(&self) -> Elem {
        0
    }

    /// Multiplicative identity; only meaningful for fields.
    pub fn one(&self) -> Elem {
        1
    }

    /// The integer `k` embedded in the carrier: `k·1` for fields and cyclic
    /// groups, `k·(1,...,1)` for direct sums.
    pub fn integer(&self, k: i64) -> Elem {
        let ds: Vec<u32> = match &self.kind {
            CarrierKind::GaloisField { .. } | CarrierKind::QuadraticExtension { .. } => {
                let mut ds = vec![0; self.radix.len()];
                ds[0] = k.rem_euclid(self.radix[0] as i64) as u32;
                ds
            }
            _ => self
                .radix
                .iter()
                .map(|&m| k.rem_euclid(m as i64) as u32)
                .collect(),
        };
        undigits(&ds, &self.radix)
    }

    fn add_digits(&self, a: Elem, b: Elem) -> Elem {
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for &m in &self.radix {
            out += ((a % m + b % m) % m) * place;
            a /= m;
            b /= m;
            place *= m;
        }
        out
    }

    fn map_digits(&self, x: Elem, f: impl Fn(u32, u32) -> u32) -> Elem {
        let mut x = x;
        let mut out = 0;
        let mut place = 1;
        for &m in &self.radix {
            out += f(x % m, m) * place;
            x /= m;
            place *= m;
        }
        out
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.add_table {
            Some(t) => t[a as usize * self.order as usize + b as usize],
            None => self.add_digits(a, b),
        }
    }

    pub fn neg(&self, x: Elem) -> Elem {
        self.map_digits(x, |d, m| (m - d) % m)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn double(&self, x: Elem) -> Elem {
        self.add(x, x)
    }

    /// The unique `y` with `y + y = x`.
    pub fn halve(&self, x: Elem) -> Elem {
        self.map_digits(x, |d, m| (d as u64 * (m as u64 + 1) / 2 % m as u64) as u32)
    }

    pub fn quarter(&self, x: Elem) -> Elem {
        self.halve(self.halve(x))
    }

    /// Field product.
    ///
    /// Panics on a non-field carrier; callers validate the carrier kind first.
    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        let t = self
            .field
            .as_ref()
            .expect("multiplication requires a field carrier");
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.order - 1;
        let e = (t.log[a as usize] + t.log[b as usize]) % n;
        t.exp[e as usize]
    }

    pub fn inv(&self, x: Elem) -> Option<Elem> {
        let t = self.field.as_ref()?;
        if x == 0 {
            return None;
        }
        let n = self.order - 1;
        Some(t.exp[((n - t.log[x as usize]) % n) as usize])
    }

    /// Smallest `y` (by index) with `y·y = x`, if any.
    pub fn sqrt(&self, x: Elem) -> Option<Elem> {
        self.field.as_ref()?;
        self.elements().find(|&y| self.mul(y, y) == x)
    }

    /// Number of elements of the base field when this is a quadratic
    /// extension; base elements are the indices below this bound.
    pub fn base_order(&self) -> u32 {
        match &self.kind {
            CarrierKind::QuadraticExtension { p, base_degree, .. } => p.pow(*base_degree),
            _ => self.order,
        }
    }

    /// Builds `F_q[s]/(s² - r)` for the smallest non-square `r` of this field.
    pub fn quadratic_extension(&self) -> Result<Carrier, CarrierError> {
        let (p, base_degree) = match &self.kind {
            CarrierKind::GaloisField { p, degree } => (*p, *degree),
            _ => return Err(CarrierError::NotAField),
        };
        let q = self.order;
        let big = q as u64 * q as u64;
        if big > MAX_ORDER as u64 {
            return Err(CarrierError::TooLarge(big));
        }
        let r = self
            .elements()
            .find(|&x| self.sqrt(x).is_none())
            .expect("odd-order fields have non-squares");
        let base = self;
        let split = |x: Elem| (x % q, x / q);
        let slow_mul = |x: Elem, y: Elem| {
            let (a, b) = split(x);
            let (c, d) = split(y);
            let re = base.add(base.mul(a, c), base.mul(r, base.mul(b, d)));
            let im = base.add(base.mul(a, d), base.mul(b, c));
            re + im * q
        };
        let tables = field_tables(q * q, slow_mul);
        let mut radix = self.radix.clone();
        radix.extend_from_slice(&self.radix);
        Ok(Carrier::from_radix(
            CarrierKind::QuadraticExtension {
                p,
                base_degree,
                nonresidue: r,
            },
            radix,
            Some(tables),
        ))
    }
}
