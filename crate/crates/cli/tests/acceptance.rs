//! One PASS/FAIL line per acceptance criterion; exits non-zero if any criterion fails.
//! Runs without the libtest harness so the lines are never captured.

use std::io::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use yamacalc::{ast, evaluate, load_catalog, parse, resolve, EvalOptions, ExpressionAst, Node, Term};
use yamacalc_core::lattice::linalg::{is_positive_definite, q_frac, to_q_vector, Q};
use yamacalc_core::lattice::{
    congruence, diagonalize_definite, enumerate_monopole_classes, maximize_aplus_squared, selfdual_project,
    Ambient, DEFAULT_DIAGONALIZE_RANK, DEFAULT_PATTERN_LIMIT,
};
use yamacalc_core::surfaces::double_cover_numbers;
use yamacalc_core::theorems::rules::{
    einstein_gate_betti, einstein_gate_euler, ricci_asd_family_value, ricci_value,
};
use yamacalc_core::theorems::{check_quadruple, CheckStatus, EinsteinVerdict, HypothesisFamily, QuadrupleWitness};
use yamacalc_core::{
    double_cover_cp2, two_chi_plus_three_tau, BettiData, Catalog, Error, ExactReal, IntersectionLattice,
    PeriodSubspace, SumExpression, Summand,
};

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn exact(num: i64, den: i64, pi_power: u8, radicand: u64) -> ExactReal {
    ExactReal::from_parts(num, den, pi_power, radicand).unwrap()
}

fn octic_witness() -> EvalOptions {
    EvalOptions { witness: Some("DC8,DC8,DC8,DC8".into()), ..Default::default() }
}

fn golden_values() -> Outcome {
    let r = evaluate("2*DC8 # S4", &Catalog::builtin(), &octic_witness()).map_err(|e| e.to_string())?;
    // Oracle: Σc₁² = 2 + 2 = 4, m = 2, N = S4 with 2χ+3τ = 4.
    //   𝒴 = −4π√(2·4) = −8π√2; ℐ_s = 32π²·4 = 128π²;
    //   ℐ_r = 8π²[4·2 − 4 + 4] = 64π²; gap = 64π² − 128π²/4 = 32π².
    let want_y = exact(-8, 1, 1, 2);
    let want_s = exact(128, 1, 2, 1);
    let want_r = exact(64, 1, 2, 1);
    let want_gap = exact(32, 1, 2, 1);
    let inv = &r.invariants;
    ensure!(inv.yamabe.exact() == Some(&want_y), "Yamabe {:?}", inv.yamabe);
    ensure!(inv.i_s.exact() == Some(&want_s), "I_s {:?}", inv.i_s);
    ensure!(inv.i_r.exact() == Some(&want_r), "I_r {:?}", inv.i_r);
    ensure!(r.ricci_scalar_gap.as_ref() == Some(&want_gap), "gap {:?}", r.ricci_scalar_gap);
    Ok(())
}

fn octic_block() -> Outcome {
    let b = double_cover_cp2(4).map_err(|e| e.to_string())?;
    let n = double_cover_numbers(4).map_err(|e| e.to_string())?;
    // Oracle: branch degree 8 ⇒ p_g = C(3,2) = 3, b₊ = 2p_g + 1 = 7, χ = 4 + 7·6 = 46,
    // τ = (c₁² − 2χ)/3 = (2 − 92)/3 = −30, so c₁² = 2χ + 3τ = 2.
    ensure!(b.c1_squared == Some(2), "c1^2 = {:?}", b.c1_squared);
    ensure!(n.p_g == 3, "p_g = {}", n.p_g);
    ensure!(b.betti.b_plus == 7, "b+ = {}", b.betti.b_plus);
    ensure!(b.betti.euler() == 46 && b.betti.signature() == -30, "chi/tau {:?}", b.betti);
    ensure!(2 * b.betti.euler() + 3 * b.betti.signature() == 2, "c1^2 oracle");
    let cat = Catalog::builtin();
    let double = resolve(&parse("DC8 # rev(DC8)").unwrap(), &cat).map_err(|e| e.to_string())?;
    // Oracle: b₂ = 2·(7 + 37) = 88 = 44 + 44.
    ensure!(double.betti().b2() == 88, "b2 = {}", double.betti().b2());
    Ok(())
}

fn dissolve_path() -> Outcome {
    let r = evaluate("DC8 # rev(DC8)", &Catalog::builtin(), &EvalOptions::default()).map_err(|e| e.to_string())?;
    // Oracle: 𝒴(CP2) = 12π√2 and 𝒴(S4) = 8π√6 bound the interval; 𝒴 > 0 forces ℐ_s = 0.
    ensure!(r.invariants.i_s.exact() == Some(&ExactReal::zero()), "I_s {:?}", r.invariants.i_s);
    ensure!(r.invariants.yamabe.exact().is_none(), "Yamabe should be an interval");
    ensure!(r.invariants.yamabe.lower() == Some(&exact(12, 1, 1, 2)), "lower {:?}", r.invariants.yamabe);
    ensure!(r.invariants.yamabe.upper() == Some(&exact(8, 1, 1, 6)), "upper {:?}", r.invariants.yamabe);
    Ok(())
}

fn gate_equivalence() -> Outcome {
    for m in 0..=4i64 {
        for b1 in 0..=50i64 {
            for bm in 0..=50i64 {
                let n = BettiData::new(b1 as u32, 0, bm as u32);
                // Oracle: with b₊ = 0, χ = 2 − 2b₁ + b₋ and τ = −b₋.
                let n2c3t = 2 * (2 - 2 * b1 + bm) - 3 * bm;
                ensure!(n.two_chi_plus_three_tau() == n2c3t, "2chi+3tau at b1={b1} b-={bm}");
                ensure!(3 * (4 * m - n2c3t) == 12 * (m - 1) + 12 * b1 + 3 * bm, "identity m={m}");
                for sum in [0, 1, 4, 12, 16, 100, 700] {
                    ensure!(
                        einstein_gate_betti(m, b1, bm, sum) == einstein_gate_euler(m, n2c3t, sum),
                        "gate disagreement m={m} b1={b1} b-={bm} sum={sum}"
                    );
                }
            }
        }
    }
    Ok(())
}

fn separation_fixture() -> Outcome {
    let mut file = tempfile::NamedTempFile::new().map_err(|e| e.to_string())?;
    writeln!(
        file,
        "block G b1=0 b_plus=11 b_minus=43 c1_squared=16 spin=yes symplectic=yes sw_mod2_nonzero=yes ; fixture"
    )
    .unwrap();
    let cat = load_catalog(Some(file.path())).map_err(|e| e.to_string())?;
    let opts = EvalOptions { witness: Some("G,K3,K3,K3".into()), ..Default::default() };
    let r = evaluate("G # 2*K3", &cat, &opts).map_err(|e| e.to_string())?;
    // Oracle: m = 3, Σc₁² = 16, N = S4. Monopole gate 12(m−1) = 24 ≥ 16 obstructs;
    // 2χ+3τ(M) = 16 + 0 + 0 − 4·2 = 8 ≥ 0, so Hitchin–Thorpe does not.
    let m = r.witness.as_ref().map(|w| w.m);
    ensure!(m == Some(3), "split m = {m:?}");
    let by = match &r.einstein {
        EinsteinVerdict::Obstructed { by } => by.clone(),
        EinsteinVerdict::NotDetermined => return Err("no obstruction reported".into()),
    };
    ensure!(by.iter().any(|b| b == "einstein.monopole_obstruction"), "by = {by:?}");
    ensure!(!by.iter().any(|b| b == "einstein.hitchin_thorpe"), "Hitchin-Thorpe fired: {by:?}");
    let ht = r.certificate("einstein.hitchin_thorpe").ok_or("missing Hitchin-Thorpe certificate")?;
    ensure!(ht.fired(), "Hitchin-Thorpe certificate not evaluated");
    ensure!(r.betti.chi * 2 + r.betti.tau * 3 == 8, "2chi+3tau = {}", 2 * r.betti.chi + 3 * r.betti.tau);
    Ok(())
}

fn random_gram(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<i64>> {
    let diagonal = rng.gen_bool(0.5);
    let mut g = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i..n {
            if i == j || !diagonal {
                let v = rng.gen_range(-3..=3);
                g[i][j] = v;
                g[j][i] = v;
            }
        }
    }
    g
}

fn random_period(rng: &mut ChaCha8Rng, lattice: &IntersectionLattice) -> Option<PeriodSubspace> {
    let n = lattice.rank();
    let mut cols: Vec<Vec<Q>> = Vec::new();
    for _ in 0..400 {
        if cols.len() == lattice.b_plus() {
            break;
        }
        cols.push((0..n).map(|_| q_frac(rng.gen_range(-4..=4), rng.gen_range(1..=3))).collect());
        let gram: Vec<Vec<Q>> = cols.iter().map(|u| cols.iter().map(|v| lattice.pair(u, v)).collect()).collect();
        if !is_positive_definite(&gram) {
            cols.pop();
        }
    }
    (cols.len() == lattice.b_plus()).then(|| PeriodSubspace::new(lattice, cols).ok()).flatten()
}

fn lattice_properties() -> Outcome {
    const CASES: usize = 500;
    let zero = Q::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0006);
    let mut checked = 0;
    for case in 0..CASES {
        let n = rng.gen_range(1..=6);
        let lattice = IntersectionLattice::new(random_gram(&mut rng, n)).map_err(|e| e.to_string())?;
        let Some(period) = random_period(&mut rng, &lattice) else { continue };
        let a = to_q_vector(&(0..n).map(|_| rng.gen_range(-5..=5)).collect::<Vec<i64>>());
        let p = selfdual_project(&lattice, &period, &a).map_err(|e| e.to_string())?;
        let minus: Vec<Q> = a.iter().zip(&p.a_plus).map(|(x, y)| x - y).collect();
        // Oracle: a⁻ = a − a⁺ is Q-orthogonal to the period, so Q(a,a) splits.
        ensure!(
            lattice.pair(&a, &a) == &p.a_plus_sq + &lattice.pair(&minus, &minus),
            "case {case}: decomposition"
        );
        ensure!(p.a_plus_sq >= zero && lattice.pair(&minus, &minus) <= zero, "case {case}: signs");
        ensure!(period.basis().iter().all(|b| lattice.pair(&minus, b) == zero), "case {case}: orthogonality");
        let again = selfdual_project(&lattice, &period, &p.a_plus).map_err(|e| e.to_string())?;
        ensure!(again.a_plus == p.a_plus, "case {case}: idempotence");
        checked += 1;
    }
    ensure!(checked > CASES / 2, "only {checked} projection cases usable");

    let mut checked = 0;
    for case in 0..CASES {
        let m = rng.gen_range(1..=3);
        let c1s: Vec<i64> = (0..m).map(|_| rng.gen_range(0..=5)).collect();
        let per_block = case % 2 == 1;
        let k = rng.gen_range(0..=if per_block { 6 - m } else { 5 });
        let ambient = if per_block { Ambient::per_block(&c1s, k) } else { Ambient::collapsed(&c1s, k) }
            .map_err(|e| e.to_string())?;
        let Some(period) = random_period(&mut rng, ambient.lattice()) else { continue };
        let classes = enumerate_monopole_classes(&ambient, DEFAULT_PATTERN_LIMIT).map_err(|e| e.to_string())?;
        let opt = maximize_aplus_squared(&ambient, &period, &classes).map_err(|e| e.to_string())?;
        // Oracle: α² = Σc₁², read straight off the inputs.
        let alpha_sq = Q::from_integer(c1s.iter().sum::<i64>().into());
        ensure!(opt.alpha_squared == alpha_sq, "case {case}: alpha^2");
        ensure!(opt.value >= opt.greedy_value, "case {case}: brute force below greedy");
        ensure!(opt.greedy_value >= alpha_sq, "case {case}: greedy below alpha^2");
        checked += 1;
    }
    ensure!(checked > CASES / 2, "only {checked} optimization cases usable");
    Ok(())
}

fn e8_negative() -> Vec<Vec<i64>> {
    // Negated Cartan matrix, chain 1-3-4-5-6-7-8 with node 2 attached to node 4.
    let edges = [(0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7)];
    let mut g = vec![vec![0i64; 8]; 8];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = -2;
    }
    for (i, j) in edges {
        g[i][j] = 1;
        g[j][i] = 1;
    }
    g
}

fn diagonalization() -> Outcome {
    let q = IntersectionLattice::new(vec![vec![-2, 1], vec![1, -1]]).map_err(|e| e.to_string())?;
    let u = diagonalize_definite(&q, DEFAULT_DIAGONALIZE_RANK).map_err(|e| e.to_string())?;
    ensure!(congruence(q.gram(), &u) == vec![vec![-1, 0], vec![0, -1]], "U^T Q U = {:?}", congruence(q.gram(), &u));
    for k in 1..=8 {
        let d = IntersectionLattice::diagonal(&vec![-1; k]);
        let u = diagonalize_definite(&d, DEFAULT_DIAGONALIZE_RANK).map_err(|e| e.to_string())?;
        ensure!(congruence(d.gram(), &u) == d.gram(), "diag(-1)^{k} round trip");
    }
    let e8 = IntersectionLattice::new(e8_negative()).map_err(|e| e.to_string())?;
    // Oracle: E8 is even, unimodular and definite, so it has no vector of square −1.
    ensure!(e8.is_unimodular() && e8.inertia() == (0, 8, 0), "E8 fixture inertia {:?}", e8.inertia());
    match diagonalize_definite(&e8, DEFAULT_DIAGONALIZE_RANK) {
        Err(Error::NotDiagonalizable(_)) => Ok(()),
        other => Err(format!("E8 gave {other:?}")),
    }
}

fn hypothesis_gates() -> Outcome {
    let cat = Catalog::builtin();
    let block = |n: &str| cat.get(n).unwrap().clone();
    let (dc8, k3) = (block("DC8"), block("K3"));
    let families = [HypothesisFamily::MinimalSurfaces, HypothesisFamily::SeibergWitten];
    for quad in [[dc8.clone(), dc8.clone(), dc8.clone(), dc8.clone()], [k3.clone(), k3.clone(), k3.clone(), k3.clone()]] {
        let w = QuadrupleWitness::new(quad, 4).map_err(|e| e.to_string())?;
        for f in families {
            let checks = check_quadruple(&w, f);
            ensure!(checks.iter().all(|c| c.passed()), "{:?} {f:?}: {checks:?}", w.names());
        }
    }
    // Oracle: Σb₊ = 7·3 + 3 = 24 ≡ 0 (mod 8), so only the mod-8 condition fails.
    let w = QuadrupleWitness::new([dc8.clone(), dc8.clone(), dc8, k3], 4).map_err(|e| e.to_string())?;
    for f in families {
        let failed: Vec<_> = check_quadruple(&w, f).into_iter().filter(|c| c.status == CheckStatus::Fail).collect();
        ensure!(failed.len() == 1 && failed[0].condition.contains("mod 8"), "{f:?}: {failed:?}");
    }
    let opts = EvalOptions { witness: Some("DC8,DC8,DC8,K3".into()), ..Default::default() };
    let r = evaluate("DC8 # K3", &cat, &opts).map_err(|e| format!("gate failure raised an error: {e}"))?;
    let cert = r.certificate("yamabe.connected_sum").ok_or("missing certificate")?;
    ensure!(!cert.fired(), "rule fired despite failing gate");
    ensure!(cert.checks.iter().any(|c| c.status == CheckStatus::Fail), "no fail check recorded");
    Ok(())
}

fn ricci_cross_check() -> Outcome {
    let cat = Catalog::builtin();
    let block = |n: &str| cat.get(n).unwrap().clone();
    for k in 0..=20u32 {
        for l in 0..=20u32 {
            let mut parts = Vec::new();
            if k > 0 {
                parts.push(Summand::new(block("CP2bar"), false, k));
            }
            if l > 0 {
                parts.push(Summand::new(block("S1xS3"), false, l));
            }
            if parts.is_empty() {
                parts.push(Summand::once(block("S4")));
            }
            let n = SumExpression::new(parts).map_err(|e| e.to_string())?;
            // Oracle: (2χ+3τ)(k CP2bar # l S1×S3) = 4 − k − 4l.
            let n2c3t = two_chi_plus_three_tau(&n);
            ensure!(n2c3t == 4 - i64::from(k) - 4 * i64::from(l), "2chi+3tau(N) at k={k} l={l}");
            for m in 1..=4i64 {
                for sum in [0, 2, 4, 8, 16] {
                    let general = ricci_value(m, n2c3t, sum).map_err(|e| e.to_string())?;
                    let family = ricci_asd_family_value(k.into(), l.into(), m, sum).map_err(|e| e.to_string())?;
                    ensure!(general == family, "k={k} l={l} m={m} sum={sum}: {general} vs {family}");
                }
            }
        }
    }
    Ok(())
}

fn arb_node() -> impl Strategy<Value = Node> {
    let leaf = prop_oneof![
        prop::sample::select(vec!["CP2", "CP2bar", "S4", "S1xS3", "K3", "DC8"]).prop_map(|n| Node::Name(n.into())),
        (3u32..7).prop_map(|k| Node::Call { name: "DC".into(), args: vec![k] }),
        (4u32..7).prop_map(|d| Node::Call { name: "HS".into(), args: vec![d] }),
    ];
    leaf.prop_recursive(2, 4, 1, |inner| inner.prop_map(|n| Node::Rev(Box::new(n))))
}

fn arb_ast() -> impl Strategy<Value = ExpressionAst> {
    prop::collection::vec((1u32..5, arb_node()).prop_map(|(multiplier, node)| Term { multiplier, node }), 1..6)
        .prop_map(|terms| ExpressionAst { terms })
}

fn parser() -> Outcome {
    let name = |n: &str| Node::Name(n.into());
    let ast = parse("2*DC8 # S4").map_err(|e| e.to_string())?;
    ensure!(ast.terms == vec![Term { multiplier: 2, node: name("DC8") }, Term { multiplier: 1, node: name("S4") }], "{ast:?}");
    let ast = parse("DC8 # rev(DC8)").map_err(|e| e.to_string())?;
    ensure!(
        ast.terms == vec![Term { multiplier: 1, node: name("DC8") }, Term { multiplier: 1, node: Node::Rev(Box::new(name("DC8"))) }],
        "{ast:?}"
    );
    let ast = parse("4*DC8 # 5*CP2bar # 2*S1xS3").map_err(|e| e.to_string())?;
    ensure!(
        ast.terms
            == vec![
                Term { multiplier: 4, node: name("DC8") },
                Term { multiplier: 5, node: name("CP2bar") },
                Term { multiplier: 2, node: name("S1xS3") },
            ],
        "{ast:?}"
    );

    let cat = Catalog::builtin();
    let mut runner = TestRunner::new(Config { cases: 200, failure_persistence: None, ..Config::default() });
    runner
        .run(&(arb_ast(), any::<u64>()), |(ast, seed)| {
            let text = ast.to_string();
            prop_assert_eq!(&parse(&text).unwrap(), &ast);
            // Whitespace is insignificant.
            let squeezed: String = text.chars().filter(|c| !c.is_whitespace()).collect();
            prop_assert_eq!(&parse(&squeezed).unwrap(), &ast);
            let spread = text.replace('(', " ( ").replace('*', " * ");
            prop_assert_eq!(&parse(&spread).unwrap(), &ast);

            let mut shuffled = ast.clone();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for i in (1..shuffled.terms.len()).rev() {
                shuffled.terms.swap(i, rng.gen_range(0..=i));
            }
            prop_assert_eq!(resolve(&ast, &cat).unwrap(), resolve(&shuffled, &cat).unwrap());
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    ensure!(ast::split_top_level("DC(4), K3", ',') == vec!["DC(4)", "K3"], "witness splitting");
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("golden values for 2*DC8 # S4", golden_values),
        ("octic double cover block", octic_block),
        ("dissolve path for DC8 # rev(DC8)", dissolve_path),
        ("Einstein gate forms agree exhaustively", gate_equivalence),
        ("spin-family separation fixture G # 2*K3", separation_fixture),
        ("lattice projection and optimization properties", lattice_properties),
        ("negative-definite diagonalization", diagonalization),
        ("quadruple hypothesis gates", hypothesis_gates),
        ("Ricci general and family forms agree", ricci_cross_check),
        ("expression parser", parser),
    ];
    let mut failures = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(()) => println!("PASS criterion {}: {title}", i + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL criterion {}: {title} -- {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
