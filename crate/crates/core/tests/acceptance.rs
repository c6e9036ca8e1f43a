//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. Comparisons are exact; only runtimes
//! carry limits.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use involeq::algebra::{
    enumerate_involutions, square_pair_involution, CarrierError, EquationInstance, EquationKind, FiniteSemigroup,
};
use involeq::families::{dalembert_family_extended, jensen_family, quadratic_family};
use involeq::morphisms::{additive_maps, biadditive_maps, multiplicative_maps, PairCondition};
use involeq::solver::{brute_force, seed_classes, seeded_brute_force, DEFAULT_BUDGET};
use involeq::verify::{
    check_equation, diagonal_reduce, identity_checks, quadratic_decompose, Check, DalembertMembership, Membership,
    WitnessField,
};
use involeq::{family, make_carrier, parse_instance, CarrierSpec, TableFun2};

const FORWARD_LIMIT: Duration = Duration::from_secs(10);
const JENSEN_LIMIT: Duration = Duration::from_secs(60);
const QUADRATIC_LIMIT: Duration = Duration::from_secs(120);
const DALEMBERT_LIMIT: Duration = Duration::from_secs(120);
/// Largest `|carrier|^(search variables after seeding)` in the completeness
/// class. Larger sweep instances are compared too and counted separately.
const COMPLETENESS_SPACE: f64 = 1e7;

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: String) -> Outcome {
    Outcome { ok: true, detail }
}

fn fail(detail: String) -> Outcome {
    Outcome { ok: false, detail }
}

fn timed(limit: Option<Duration>, run: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut out = run();
    let elapsed = start.elapsed();
    match limit {
        Some(limit) if elapsed > limit => {
            out.ok = false;
            out.detail = format!("{}; took {:.2?}, limit {:?}", out.detail, elapsed, limit);
        }
        Some(limit) => out.detail = format!("{}; {:.2?} (limit {:?})", out.detail, elapsed, limit),
        None => out.detail = format!("{}; {:.2?}", out.detail, elapsed),
    }
    out
}

fn in_completeness_class(inst: &EquationInstance) -> bool {
    let classes: BTreeSet<usize> = seed_classes(inst).into_iter().collect();
    (inst.carrier().order() as f64).powi(classes.len() as i32) <= COMPLETENESS_SPACE
}

fn solutions(inst: &EquationInstance) -> BTreeSet<TableFun2> {
    brute_force(inst, DEFAULT_BUDGET).expect("within budget").solutions.into_iter().collect()
}

fn forward_direction(sweep: &[(String, EquationInstance)]) -> Outcome {
    let mut functions = 0;
    for (name, inst) in sweep {
        for f in family(inst, true).unwrap() {
            functions += 1;
            let v = check_equation(inst, &f).unwrap();
            if !v.is_empty() {
                return fail(format!("{name}: family member {f} violates at {}", v[0]));
            }
        }
    }
    pass(format!("{} instances, {functions} family members, 0 violations", sweep.len()))
}

fn completeness(
    sweep: &[(String, EquationInstance)],
    kind: EquationKind,
    fam: impl Fn(&EquationInstance) -> BTreeSet<TableFun2>,
) -> Outcome {
    let mut instances = 0;
    let mut beyond = 0;
    let mut total = 0;
    for (name, inst) in sweep.iter().filter(|(_, i)| i.kind() == kind) {
        if in_completeness_class(inst) {
            instances += 1;
        } else {
            beyond += 1;
        }
        let brute = solutions(inst);
        let family = fam(inst);
        if brute != family {
            return fail(format!(
                "{name}: {} solutions, family {}, common {}",
                brute.len(),
                family.len(),
                brute.intersection(&family).count()
            ));
        }
        total += brute.len();
    }
    pass(format!("{instances} instances in class, {beyond} beyond, {total} solutions, sets equal"))
}

fn dalembert_completeness(sweep: &[(String, EquationInstance)]) -> Outcome {
    let mut instances = 0;
    let mut beyond = 0;
    let mut total = 0;
    let mut extension = 0;
    let mut needing = Vec::new();
    for (name, inst) in sweep.iter().filter(|(_, i)| i.kind() == EquationKind::DAlembert) {
        if in_completeness_class(inst) {
            instances += 1;
        } else {
            beyond += 1;
        }
        let brute = solutions(inst);
        let family = dalembert_family_extended(inst).unwrap();
        if brute != family {
            return fail(format!("{name}: {} solutions, extended family {}", brute.len(), family.len()));
        }
        let m = DalembertMembership::new(inst, true);
        let mut here = 0;
        for f in &brute {
            match m.check(f) {
                Membership::Member(w) if w.field == WitnessField::Extension => here += 1,
                Membership::Member(_) => {}
                Membership::NotMember => return fail(format!("{name}: {f} has no witness")),
            }
        }
        if here > 0 {
            needing.push(format!("{name}:{here}"));
        }
        extension += here;
        total += brute.len();
    }
    pass(format!(
        "{instances} instances in class, {beyond} beyond, {total} solutions all witnessed, {extension} need F_(q^2) [{}]",
        needing.join(" ")
    ))
}

fn proof_identities(sweep: &[(String, EquationInstance)]) -> Outcome {
    let mut solutions_seen = 0;
    let mut checks = 0;
    let mut sine = 0;
    for (name, inst) in sweep {
        let membership = (inst.kind() == EquationKind::DAlembert).then(|| DalembertMembership::new(inst, true));
        for f in solutions(inst) {
            solutions_seen += 1;
            for r in identity_checks(inst, &f, membership.as_ref()) {
                match r.outcome {
                    Check::Fail => return fail(format!("{name}: {f} fails {}", r.name)),
                    Check::Pass => {
                        checks += 1;
                        sine += usize::from(r.name == "sine-addition");
                    }
                    Check::NotApplicable => {
                        let expected = match r.name {
                            "sine-addition" => !inst.semigroup().is_group(),
                            "diagonal" => inst.sigma() != inst.tau(),
                            _ => false,
                        };
                        if !expected {
                            return fail(format!("{name}: {f}: {} not applicable", r.name));
                        }
                    }
                }
            }
        }
    }
    pass(format!(
        "{solutions_seen} solutions, {checks} identity checks passed ({sine} sine-addition), 0 failures"
    ))
}

fn diagonal_reduction(sweep: &[(String, EquationInstance)]) -> Outcome {
    let mut instances = 0;
    let mut reduced = 0;
    for (name, inst) in sweep.iter().filter(|(_, i)| i.sigma() == i.tau()) {
        instances += 1;
        let p = prime(inst);
        let s = inst.semigroup();
        let n = s.size();
        for f in solutions(inst) {
            let d = diagonal_reduce(inst, &f).unwrap();
            // independent check of g(x+y) + g(x+σy) against the right side
            let g: Vec<u64> = (0..n).map(|x| f.get(x, x) as u64).collect();
            let oracle = (0..n).all(|x| {
                (0..n).all(|y| {
                    let lhs = (g[s.op(x, y)] + g[s.op(x, inst.sigma().apply(y))]) % p;
                    let rhs = match inst.kind() {
                        EquationKind::DAlembert => 2 * g[x] * g[y] % p,
                        EquationKind::Jensen => 2 * g[x] % p,
                        EquationKind::Quadratic => 2 * (g[x] + g[y]) % p,
                    };
                    lhs == rhs
                })
            });
            if !d.holds() || !oracle {
                return fail(format!("{name}: diagonal of {f} fails the single-variable equation"));
            }
            reduced += 1;
        }
    }
    pass(format!("{instances} instances with sigma = tau, {reduced} diagonals, 0 failures"))
}

fn explicit_quadratic_forms() -> Outcome {
    let inst = parse_instance("cyclic 5\nsigma negation\ntau negation\ncarrier gf 5\nequation quadratic\n").unwrap();
    let half = inv2(5);
    let mut checked = 0;
    for a in 0..5u64 {
        for b in 0..5u64 {
            for c in 0..5u64 {
                let f = TableFun2::from_fn(5, |x, z| {
                    let (x, z) = (x as u64, z as u64);
                    ((a * x * x + b * x * z + c * z * z) % 5) as u32
                });
                let v = check_equation(&inst, &f).unwrap();
                if !v.is_empty() {
                    return fail(format!("a={a} b={b} c={c}: violation at {}", v[0]));
                }
                let d = match quadratic_decompose(&inst, &f) {
                    Ok(d) => d,
                    Err(e) => return fail(format!("a={a} b={b} c={c}: {e}")),
                };
                if !d.is_exact() || d.linear.values().iter().any(|&t| t != 0) {
                    return fail(format!("a={a} b={b} c={c}: decomposition not exact or T != 0"));
                }
                for u in 0..25usize {
                    for r in 0..25usize {
                        let (x, z) = ((u / 5) as u64, (u % 5) as u64);
                        let (t, s) = ((r / 5) as u64, (r % 5) as u64);
                        let expected = (a * x * t + b * half % 5 * (x * s + z * t) + c * z * s) % 5;
                        if d.form_at(u, r) as u64 != expected {
                            return fail(format!("a={a} b={b} c={c}: B at ({u},{r}) is {}, expected {expected}", d.form_at(u, r)));
                        }
                    }
                }
                checked += 1;
            }
        }
    }
    pass(format!("{checked} forms pass the equation and decompose with T = 0"))
}

fn oracle_equivalence(sweep: &[(String, EquationInstance)]) -> Outcome {
    for (name, inst) in sweep {
        let plain = brute_force(inst, DEFAULT_BUDGET).unwrap();
        let seeded = seeded_brute_force(inst, DEFAULT_BUDGET).unwrap();
        if plain.solutions != seeded.solutions {
            return fail(format!("{name}: seeded search differs"));
        }
    }
    let semigroups = [
        FiniteSemigroup::cyclic(1),
        FiniteSemigroup::cyclic(2),
        FiniteSemigroup::cyclic(3),
        FiniteSemigroup::truncated_addition(2),
        FiniteSemigroup::truncated_addition(3),
    ];
    let mut enumerations = 0;
    for s in &semigroups {
        let p2 = s.product(s);
        let invs = enumerate_involutions(s);
        for q in [3u32, 5] {
            let field = make_carrier(&CarrierSpec::GaloisField(q)).unwrap();
            let pruned: BTreeSet<Vec<u32>> = multiplicative_maps(&p2, &field).into_iter().collect();
            if pruned != naive_multiplicative(s, q as u64) {
                return fail(format!("multiplicative |S|={} q={q}", s.size()));
            }
            enumerations += 1;
            let group = make_carrier(&CarrierSpec::ZMod(q)).unwrap();
            for sigma in &invs {
                for tau in &invs {
                    let pi = square_pair_involution(sigma, tau);
                    for (condition, sign) in [
                        (PairCondition::Unconstrained, None),
                        (PairCondition::Symmetric, Some(1)),
                        (PairCondition::AntiSymmetric, Some(-1)),
                    ] {
                        let pruned: BTreeSet<Vec<u32>> =
                            additive_maps(&p2, &group, condition, pi.as_slice()).into_iter().collect();
                        if pruned != naive_additive(s, sigma, tau, q as u64, sign) {
                            return fail(format!("additive |S|={} q={q} {condition:?}", s.size()));
                        }
                        enumerations += 1;
                    }
                    let pruned: BTreeSet<Vec<u32>> =
                        biadditive_maps(&p2, &group, true, Some(pi.as_slice())).into_iter().collect();
                    if pruned != naive_biadditive(s, sigma, tau, q as u64) {
                        return fail(format!("biadditive |S|={} q={q}", s.size()));
                    }
                    enumerations += 1;
                }
            }
        }
    }
    pass(format!(
        "{} instances seeded = plain, {enumerations} pruned enumerations = naive",
        sweep.len()
    ))
}

fn negative_controls(sweep: &[(String, EquationInstance)]) -> Outcome {
    for kind in ["jensen", "quadratic"] {
        let text = format!("cyclic 3\nsigma identity\ntau identity\ncarrier zmod 4\nequation {kind}\n");
        match parse_instance(&text) {
            Err(e) if e.line == 4 && e.message.contains("even") => {}
            other => return fail(format!("zmod 4 with {kind} accepted or misreported: {other:?}")),
        }
    }
    if make_carrier(&CarrierSpec::ZMod(4)) != Err(CarrierError::EvenOrder(4)) {
        return fail("zmod 4 carrier constructed".into());
    }
    for q in [2u32, 4, 8, 16] {
        if !matches!(make_carrier(&CarrierSpec::GaloisField(q)), Err(CarrierError::EvenCharacteristic(_))) {
            return fail(format!("GF({q}) constructed"));
        }
        for kind in ["dalembert", "jensen", "quadratic"] {
            let text = format!("cyclic 2\nsigma identity\ntau identity\ncarrier gf {q}\nequation {kind}\n");
            if parse_instance(&text).is_ok() {
                return fail(format!("GF({q}) accepted for {kind}"));
            }
        }
    }
    let mut planted = 0;
    let mut solutions_hit = 0;
    for (name, inst) in sweep {
        let p = prime(inst) as u32;
        let sols = solutions(inst);
        for f in sols.iter().take(8) {
            for u in 0..inst.cells() {
                let mut g = f.clone();
                g.set(u, (g.at(u) + 1) % p);
                let v = check_equation(inst, &g).unwrap();
                if sols.contains(&g) {
                    // the change landed on another solution
                    if !v.is_empty() {
                        return fail(format!("{name}: solution {g} reported as violating"));
                    }
                    solutions_hit += 1;
                    continue;
                }
                let Some(first) = v.first() else {
                    return fail(format!("{name}: corruption of cell {u} in {f} undetected"));
                };
                let quad = (first.x, first.y, first.z, first.w);
                if holds_at(inst.semigroup(), inst.sigma(), inst.tau(), p as u64, inst.kind(), g.values(), quad) {
                    return fail(format!("{name}: reported quadruple {first} does not violate"));
                }
                planted += 1;
            }
        }
    }
    pass(format!(
        "even and characteristic-2 carriers rejected; {planted} corruptions detected with a violating quadruple \
         ({solutions_hit} changes produced another solution)"
    ))
}

fn main() -> ExitCode {
    let sweep = sweep();
    let criteria: Vec<Criterion> = vec![
        ("1 forward direction", Box::new(|| timed(Some(FORWARD_LIMIT), || forward_direction(&sweep)))),
        (
            "2 completeness, Jensen",
            Box::new(|| timed(Some(JENSEN_LIMIT), || completeness(&sweep, EquationKind::Jensen, jensen_family))),
        ),
        (
            "3 completeness, quadratic",
            Box::new(|| {
                timed(Some(QUADRATIC_LIMIT), || completeness(&sweep, EquationKind::Quadratic, quadratic_family))
            }),
        ),
        ("4 completeness, d'Alembert", Box::new(|| timed(Some(DALEMBERT_LIMIT), || dalembert_completeness(&sweep)))),
        ("5 proof identities", Box::new(|| timed(None, || proof_identities(&sweep)))),
        ("6 diagonal reduction", Box::new(|| timed(None, || diagonal_reduction(&sweep)))),
        ("7 explicit quadratic forms", Box::new(|| timed(None, explicit_quadratic_forms))),
        ("8 oracle equivalence", Box::new(|| timed(None, || oracle_equivalence(&sweep)))),
        ("9 negative controls", Box::new(|| timed(None, || negative_controls(&sweep)))),
    ];
    let bundled = bundled().len();
    println!("acceptance: {bundled} bundled instances, {} after sweeping involution pairs", sweep.len());
    let mut failures = 0;
    for (name, run) in &criteria {
        let out = run();
        println!("{} criterion {name}: {}", if out.ok { "PASS" } else { "FAIL" }, out.detail);
        failures += usize::from(!out.ok);
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
