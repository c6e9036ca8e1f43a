//! Independent oracles shared by the integration tests. Arithmetic here is
//! plain integer arithmetic modulo a prime, and the equations are evaluated
//! in their four-variable form over `S`, so nothing goes through the
//! library's carrier tables, product semigroup or pair involution.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use involeq::algebra::{enumerate_involutions, EquationInstance, EquationKind, FiniteSemigroup, Involution};
use involeq::TableFun2;

pub fn instances_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("instances")
}

/// Bundled instances, sorted by file name.
pub fn bundled() -> Vec<(String, EquationInstance)> {
    let mut files: Vec<PathBuf> = fs::read_dir(instances_dir())
        .expect("instances directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "inst"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| {
            let text = fs::read_to_string(&p).unwrap();
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            let inst = involeq::parse_instance(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
            (name, inst)
        })
        .collect()
}

/// Every bundled (semigroup, carrier, equation) combination under every
/// pair of involutions of its semigroup, deduplicated.
pub fn sweep() -> Vec<(String, EquationInstance)> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (name, inst) in bundled() {
        let s = inst.semigroup();
        let invs = enumerate_involutions(s);
        for (i, sigma) in invs.iter().enumerate() {
            for (j, tau) in invs.iter().enumerate() {
                let v = EquationInstance::new(s.clone(), sigma.clone(), tau.clone(), inst.carrier().clone(), inst.kind())
                    .unwrap();
                if seen.insert(v.to_text()) {
                    out.push((format!("{name}[σ{i},τ{j}]"), v));
                }
            }
        }
    }
    out
}

/// The prime order of the carrier. Every bundled carrier has prime order,
/// where element indices are the integers `0..p`.
pub fn prime(inst: &EquationInstance) -> u64 {
    let p = inst.carrier().order() as u64;
    assert!((2..p).all(|d| !p.is_multiple_of(d)), "oracles only handle prime carriers");
    p
}

pub fn inv2(p: u64) -> u64 {
    p.div_ceil(2)
}

/// Whether `f` (indexed `f[x * n + z]`) satisfies the instance's equation,
/// evaluated quadruple by quadruple.
pub fn satisfies(s: &FiniteSemigroup, sigma: &Involution, tau: &Involution, p: u64, kind: EquationKind, f: &[u32]) -> bool {
    first_violation(s, sigma, tau, p, kind, f).is_none()
}

pub fn first_violation(
    s: &FiniteSemigroup,
    sigma: &Involution,
    tau: &Involution,
    p: u64,
    kind: EquationKind,
    f: &[u32],
) -> Option<(usize, usize, usize, usize)> {
    let n = s.size();
    for x in 0..n {
        for z in 0..n {
            for y in 0..n {
                for w in 0..n {
                    if !holds_at(s, sigma, tau, p, kind, f, (x, y, z, w)) {
                        return Some((x, y, z, w));
                    }
                }
            }
        }
    }
    None
}

pub fn holds_at(
    s: &FiniteSemigroup,
    sigma: &Involution,
    tau: &Involution,
    p: u64,
    kind: EquationKind,
    f: &[u32],
    (x, y, z, w): (usize, usize, usize, usize),
) -> bool {
    let n = s.size();
    let at = |a: usize, b: usize| f[a * n + b] as u64;
    let lhs = (at(s.op(x, y), s.op(z, w)) + at(s.op(x, sigma.apply(y)), s.op(z, tau.apply(w)))) % p;
    let rhs = match kind {
        EquationKind::DAlembert => 2 * at(x, z) * at(y, w) % p,
        EquationKind::Jensen => 2 * at(x, z) % p,
        EquationKind::Quadratic => 2 * (at(x, z) + at(y, w)) % p,
    };
    lhs == rhs
}

/// Odometer over all `p^len` tables.
pub fn for_each_table(len: usize, p: u64, mut visit: impl FnMut(&[u32])) {
    let mut t = vec![0u32; len];
    loop {
        visit(&t);
        let mut i = len;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            t[i] += 1;
            if (t[i] as u64) < p {
                break;
            }
            t[i] = 0;
        }
    }
}

/// Solutions by scanning every table; `None` when there are more than
/// `limit` tables.
pub fn naive_solutions(inst: &EquationInstance, limit: u64) -> Option<BTreeSet<Vec<u32>>> {
    let p = prime(inst);
    let cells = inst.cells();
    if (p as f64).powi(cells as i32) > limit as f64 {
        return None;
    }
    let mut out = BTreeSet::new();
    for_each_table(cells, p, |t| {
        if satisfies(inst.semigroup(), inst.sigma(), inst.tau(), p, inst.kind(), t) {
            out.insert(t.to_vec());
        }
    });
    Some(out)
}

/// Pairs `(x, z)` of `S²` in row-major order with their componentwise sum.
pub fn pair_op(s: &FiniteSemigroup, u: usize, v: usize) -> usize {
    let n = s.size();
    s.op(u / n, v / n) * n + s.op(u % n, v % n)
}

pub fn pair_inv(sigma: &Involution, tau: &Involution, u: usize) -> usize {
    let n = sigma.size();
    sigma.apply(u / n) * n + tau.apply(u % n)
}

/// Multiplicative maps `S² → F_p` by full scan.
pub fn naive_multiplicative(s: &FiniteSemigroup, p: u64) -> BTreeSet<Vec<u32>> {
    let cells = s.size() * s.size();
    let mut out = BTreeSet::new();
    for_each_table(cells, p, |t| {
        let ok = (0..cells).all(|u| {
            (0..cells).all(|v| t[pair_op(s, u, v)] as u64 == t[u] as u64 * t[v] as u64 % p)
        });
        if ok {
            out.insert(t.to_vec());
        }
    });
    out
}

/// Additive maps `S² → Z_p` by full scan; `sign` is `Some(+1)` for
/// `a∘π = a`, `Some(-1)` for `a∘π = -a`.
pub fn naive_additive(s: &FiniteSemigroup, sigma: &Involution, tau: &Involution, p: u64, sign: Option<i8>) -> BTreeSet<Vec<u32>> {
    let cells = s.size() * s.size();
    let mut out = BTreeSet::new();
    for_each_table(cells, p, |t| {
        let additive = (0..cells)
            .all(|u| (0..cells).all(|v| t[pair_op(s, u, v)] as u64 == (t[u] as u64 + t[v] as u64) % p));
        let signed = match sign {
            None => true,
            Some(1) => (0..cells).all(|u| t[pair_inv(sigma, tau, u)] == t[u]),
            Some(_) => (0..cells).all(|u| (t[pair_inv(sigma, tau, u)] as u64 + t[u] as u64).is_multiple_of(p)),
        };
        if additive && signed {
            out.insert(t.to_vec());
        }
    });
    out
}

/// Symmetric biadditive forms on `S²` with `B(π(u), v) = -B(u, v)`, chosen
/// row by row from the additive maps and filtered at the end.
pub fn naive_biadditive(s: &FiniteSemigroup, sigma: &Involution, tau: &Involution, p: u64) -> BTreeSet<Vec<u32>> {
    let rows: Vec<Vec<u32>> = naive_additive(s, sigma, tau, p, None).into_iter().collect();
    let mut out = BTreeSet::new();
    let mut chosen: Vec<usize> = Vec::new();
    fn consistent(s: &FiniteSemigroup, rows: &[Vec<u32>], chosen: &[usize], p: u64) -> bool {
        let k = chosen.len();
        let cells = s.size() * s.size();
        // rows already fixed must be additive in the first argument
        (0..k).all(|u| {
            (0..k).all(|v| {
                let w = pair_op(s, u, v);
                w >= k || (0..cells).all(|r| {
                    rows[chosen[w]][r] as u64 == (rows[chosen[u]][r] as u64 + rows[chosen[v]][r] as u64) % p
                })
            })
        })
    }
    fn go(
        s: &FiniteSemigroup,
        sigma: &Involution,
        tau: &Involution,
        p: u64,
        rows: &[Vec<u32>],
        chosen: &mut Vec<usize>,
        out: &mut BTreeSet<Vec<u32>>,
    ) {
        let cells = s.size() * s.size();
        if !consistent(s, rows, chosen, p) {
            return;
        }
        if chosen.len() == cells {
            let b: Vec<u32> = chosen.iter().flat_map(|&i| rows[i].iter().copied()).collect();
            let symmetric = (0..cells).all(|u| (0..cells).all(|v| b[u * cells + v] == b[v * cells + u]));
            let signed = (0..cells).all(|u| {
                (0..cells).all(|v| (b[pair_inv(sigma, tau, u) * cells + v] as u64 + b[u * cells + v] as u64).is_multiple_of(p))
            });
            if symmetric && signed {
                out.insert(b);
            }
            return;
        }
        for i in 0..rows.len() {
            chosen.push(i);
            go(s, sigma, tau, p, rows, chosen, out);
            chosen.pop();
        }
    }
    go(s, sigma, tau, p, &rows, &mut chosen, &mut out);
    out
}

pub fn tables(set: impl IntoIterator<Item = TableFun2>) -> BTreeSet<Vec<u32>> {
    set.into_iter().map(TableFun2::into_values).collect()
}
