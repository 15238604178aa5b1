//! Acceptance checks AC1–AC10. Runs without the libtest harness so that the
//! `[PASS]`/`[FAIL]` lines always reach the output.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use slidewin::automata::{
    combine, concat, determinize, equivalent, floor_log2, minimize, reversed, Alphabet, BoolOp,
    Dfa, Formula, Nfa, StateDistance, Word,
};
use slidewin::classify::{
    classify_dfa, decide, is_constant_fixed, linear_witness_streams, max_alternations,
    path_summary, suffix_testable_k, FixedClass, Problem, SpaceClass, VariableClass,
};
use slidewin::decompose::{
    alternation_decomposition, constant_decomposition, log_class_decomposition,
    DecompositionCertificate,
};
use slidewin::exactspace::{
    exact_f, exact_v, optimal_variable_algorithm, psi_image_count_closure,
    psi_image_count_enumerate, psi_language_dfa, psi_mealy, sparse_fixed_algorithm, window_dfa,
};
use slidewin::families::{
    gen_lk, gen_rho_const, random_dfa, random_minimal_dfa, random_nfa, GadgetAlphabet,
};
use slidewin::streaming::{
    fixed_space_profile, reduce_via_mealy, reference_variable_algorithm, variable_space_profile,
    BooleanProduct, FixedWindowSpec, MealyMachine, StreamToken, StreamingAlgorithm,
};

const EXPLORE_BUDGET: usize = 1 << 20;

fn ab() -> Alphabet {
    Alphabet::chars("ab").unwrap()
}

fn dfa(names: &[&str], finals: &[usize], trans: &[(usize, usize, usize)]) -> Dfa {
    Dfa::from_transitions(
        ab(),
        names.iter().map(|s| s.to_string()).collect(),
        0,
        trans.iter().copied(),
        finals.iter().copied(),
    )
    .unwrap()
}

struct Lang {
    name: &'static str,
    dfa: Dfa,
    /// Classes derived by hand.
    expected: SpaceClass,
}

fn class(fixed: FixedClass, variable: VariableClass) -> SpaceClass {
    SpaceClass { fixed, variable }
}

fn corpus() -> Vec<Lang> {
    use FixedClass as F;
    use VariableClass as V;
    vec![
        Lang {
            name: "aΣ*",
            dfa: dfa(
                &["i", "y", "n"],
                &[1],
                &[
                    (0, 0, 1),
                    (0, 1, 2),
                    (1, 0, 1),
                    (1, 1, 1),
                    (2, 0, 2),
                    (2, 1, 2),
                ],
            ),
            expected: class(F::Linear, V::Linear),
        },
        Lang {
            name: "Σ*a",
            dfa: dfa(
                &["n", "y"],
                &[1],
                &[(0, 0, 1), (0, 1, 0), (1, 0, 1), (1, 1, 0)],
            ),
            expected: class(F::Constant, V::Logarithmic),
        },
        Lang {
            name: "even length",
            dfa: dfa(
                &["e", "o"],
                &[0],
                &[(0, 0, 1), (0, 1, 1), (1, 0, 0), (1, 1, 0)],
            ),
            expected: class(F::Constant, V::Logarithmic),
        },
        Lang {
            name: "even #a",
            dfa: dfa(
                &["e", "o"],
                &[0],
                &[(0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 1, 1)],
            ),
            expected: class(F::Linear, V::Linear),
        },
        Lang {
            name: "Σ*abΣ*",
            dfa: dfa(
                &["0", "1", "2"],
                &[2],
                &[
                    (0, 0, 1),
                    (0, 1, 0),
                    (1, 0, 1),
                    (1, 1, 2),
                    (2, 0, 2),
                    (2, 1, 2),
                ],
            ),
            expected: class(F::Logarithmic, V::Logarithmic),
        },
        Lang {
            name: "a*",
            dfa: dfa(
                &["y", "n"],
                &[0],
                &[(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 1)],
            ),
            expected: class(F::Logarithmic, V::Logarithmic),
        },
        Lang {
            name: "∅",
            dfa: Dfa::trivial(ab(), false),
            expected: class(F::Constant, V::TrivialConstant),
        },
        Lang {
            name: "Σ*",
            dfa: Dfa::trivial(ab(), true),
            expected: class(F::Constant, V::TrivialConstant),
        },
        Lang {
            name: "L_1",
            dfa: gen_lk(1),
            expected: class(F::Logarithmic, V::Logarithmic),
        },
        Lang {
            name: "L_2",
            dfa: gen_lk(2),
            expected: class(F::Logarithmic, V::Logarithmic),
        },
    ]
}

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

/// The optimal variable-size algorithm uses exactly `⌊log₂|ψ_L(Σ^{≤n})|⌋`
/// bits, with the count taken by enumeration and by closure.
fn ac1() -> Check {
    let mut langs: Vec<(String, Dfa)> = corpus()
        .into_iter()
        .filter(|l| l.dfa.alphabet().len() == 2)
        .map(|l| (l.name.to_string(), minimize(&l.dfa)))
        .filter(|(_, d)| d.num_states() > 1)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for states in [3, 3, 4, 4, 5, 5] {
        langs.push((
            format!("random {states}-state"),
            random_minimal_dfa(&mut rng, &ab(), states),
        ));
    }
    ensure(langs.len() >= 10, || {
        format!("corpus has only {} languages", langs.len())
    })?;
    for (name, d) in &langs {
        ensure(d.num_states() <= 5, || {
            format!("{name} has {} states", d.num_states())
        })?;
        let alg = optimal_variable_algorithm(d).map_err(e)?;
        let profile = variable_space_profile(&alg, 8, EXPLORE_BUDGET).map_err(e)?;
        for n in 1..=8 {
            let by_enum = psi_image_count_enumerate(d, n).map_err(e)?;
            let by_closure = psi_image_count_closure(d, n).map_err(e)?;
            ensure(by_enum == by_closure, || {
                format!("{name}, n={n}: ψ-counts {by_enum} vs {by_closure}")
            })?;
            let want = floor_log2(by_enum);
            ensure(profile.at(n) == want, || {
                format!("{name}, n={n}: space {} ≠ {want}", profile.at(n))
            })?;
        }
    }
    Ok(format!("{} minimal DFAs, n = 1..8", langs.len()))
}

fn ac2() -> Check {
    let c = corpus();
    for l in &c {
        let got = classify_dfa(&l.dfa).map_err(e)?.class;
        ensure(got == l.expected, || {
            format!(
                "{}: got ({}, {}), expected ({}, {})",
                l.name, got.fixed, got.variable, l.expected.fixed, l.expected.variable
            )
        })?;
    }
    Ok(format!("{} labeled languages", c.len()))
}

fn ac3() -> Check {
    let mut rows = Vec::new();
    for k in [1usize, 2] {
        let lk = gen_lk(k);
        for n in [4usize, 6, 8] {
            let f = exact_f(&lk, n).map_err(e)?;
            let bound = ((1i64 << k) - 1) * (floor_log2(n) as i64 - k as i64);
            ensure(f as i64 >= bound, || {
                format!("k={k}, n={n}: F={f} < {bound}")
            })?;
            rows.push(format!("F(L_{k},{n})={f}≥{bound}"));
        }
    }
    Ok(rows.join(" "))
}

/// Membership of every suffix of the window, probed by popping.
fn pop_probe(l: &Dfa, window: &[usize]) -> Vec<bool> {
    let alg = reference_variable_algorithm(l);
    let mut s = alg.initial();
    for &a in window {
        s = alg.step(&s, StreamToken::Symbol(a));
    }
    let mut out = vec![alg.accepts(&s)];
    for _ in 0..window.len() {
        s = alg.step(&s, StreamToken::Pop);
        out.push(alg.accepts(&s));
    }
    out
}

fn ac4() -> Check {
    let mut summary = Vec::new();
    for l in corpus() {
        let c = classify_dfa(&l.dfa).map_err(e)?;
        if c.class.fixed != FixedClass::Linear {
            continue;
        }
        let w = c
            .non_well_behaved
            .as_ref()
            .ok_or_else(|| format!("{}: linear without witness", l.name))?;
        w.verify(&c.reversed).map_err(e)?;
        let period = w.period();
        for j in 1..=8 {
            let windows: Vec<Word> = linear_witness_streams(w, j)
                .iter()
                .map(|s| reversed(s))
                .collect();
            let probes: HashSet<Vec<bool>> = windows.iter().map(|x| pop_probe(&l.dfa, x)).collect();
            ensure(probes.len() == 1 << j, || {
                format!(
                    "{}: j={j}: only {} of {} distinguished",
                    l.name,
                    probes.len(),
                    1 << j
                )
            })?;
            let n = w.u.len() + j * period;
            // 2^j distinct states at window length n
            if n <= 16 {
                let v = exact_v(&l.dfa, n).map_err(e)?;
                ensure(v >= j, || format!("{}: V({n}) = {v} < {j}", l.name))?;
            }
        }
        summary.push(format!("{} (c={period}, |u|={})", l.name, w.u.len()));
    }
    ensure(!summary.is_empty(), || "no linear corpus language".into())?;
    Ok(summary.join(", "))
}

fn ac5() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut constant, mut other) = (0, 0);
    for i in 0..20 {
        let d = random_dfa(&mut rng, &ab(), 4);
        let q = d.num_states();
        let mut oracle = true;
        for n in 0..=6 {
            let ln = window_dfa(&d, FixedWindowSpec::new(n)).map_err(e)?;
            if suffix_testable_k(&ln) > StateDistance::Finite(q) {
                oracle = false;
                break;
            }
        }
        let decided = is_constant_fixed(&d);
        ensure(decided == oracle, || {
            format!("DFA #{i}: is_constant_fixed = {decided}, oracle = {oracle}")
        })?;
        if decided {
            constant += 1;
        } else {
            other += 1;
        }
    }
    Ok(format!(
        "20 random 4-state DFAs agree ({constant} constant, {other} not)"
    ))
}

fn ac6() -> Check {
    let mut checked = 0;
    for l in corpus() {
        for n in 0..=6 {
            let ln = window_dfa(&l.dfa, FixedWindowSpec::new(n)).map_err(e)?;
            let f = exact_f(&l.dfa, n).map_err(e)?;
            let bound = (1usize << (f + 1)) - 1;
            let k = suffix_testable_k(&ln);
            ensure(k <= StateDistance::Finite(bound), || {
                format!("{}, n={n}: {k:?} > {bound}", l.name)
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (language, n) pairs"))
}

fn round_trip(
    name: &str,
    what: &str,
    l: &Dfa,
    cert: &DecompositionCertificate,
) -> Result<(), String> {
    cert.verify()
        .map_err(|err| format!("{name} {what}: {err}"))?;
    for leaf in cert.leaves() {
        ensure(leaf.tag.holds(&leaf.dfa), || {
            format!("{name} {what}: leaf is not {}", leaf.tag)
        })?;
    }
    let eval = cert.evaluate().map_err(e)?;
    ensure(equivalent(&eval, l).map_err(e)?, || {
        format!("{name} {what}: not equivalent")
    })?;
    DecompositionCertificate::from_json(&cert.to_json())
        .map_err(|err| format!("{name} {what} json: {err}"))?;
    Ok(())
}

fn ac7() -> Check {
    let (mut log, mut constant, mut alt) = (0, 0, 0);
    for l in corpus() {
        let c = classify_dfa(&l.dfa).map_err(e)?.class;
        if c.fixed != FixedClass::Linear {
            round_trip(
                l.name,
                "log",
                &l.dfa,
                &log_class_decomposition(&l.dfa).map_err(|err| format!("{}: {err}", l.name))?,
            )?;
            log += 1;
        }
        if c.fixed == FixedClass::Constant {
            round_trip(
                l.name,
                "constant",
                &l.dfa,
                &constant_decomposition(&l.dfa).map_err(|err| format!("{}: {err}", l.name))?,
            )?;
            constant += 1;
        }
        if max_alternations(&l.dfa).map_err(e)?.bound.is_finite() {
            round_trip(
                l.name,
                "alternation",
                &l.dfa,
                &alternation_decomposition(&l.dfa).map_err(e)?,
            )?;
            alt += 1;
        }
    }
    Ok(format!(
        "log: {log}, constant: {constant}, alternation: {alt} certificates"
    ))
}

fn ac8() -> Check {
    let c = corpus();
    let by = |name: &str| c.iter().find(|l| l.name == name).unwrap().dfa.clone();
    let pairs = [
        (
            "Σ*a",
            "even length",
            Formula::Union(vec![Formula::leaf(0), Formula::leaf(1)]),
        ),
        (
            "Σ*abΣ*",
            "a*",
            Formula::Intersection(vec![Formula::leaf(0), Formula::leaf(1)]),
        ),
        (
            "Σ*a",
            "even #a",
            Formula::minus(Formula::leaf(0), Formula::leaf(1)),
        ),
        (
            "aΣ*",
            "Σ*abΣ*",
            Formula::Union(vec![Formula::leaf(0), Formula::not(Formula::leaf(1))]),
        ),
    ];
    let mut checked = 0;
    for (x, y, f) in &pairs {
        let (lx, ly) = (by(x), by(y));
        let components = vec![
            optimal_variable_algorithm(&lx).map_err(e)?,
            optimal_variable_algorithm(&ly).map_err(e)?,
        ];
        let px = variable_space_profile(&components[0], 8, EXPLORE_BUDGET).map_err(e)?;
        let py = variable_space_profile(&components[1], 8, EXPLORE_BUDGET).map_err(e)?;
        let prod = BooleanProduct::new(components, f.clone()).map_err(e)?;
        let pp = variable_space_profile(&prod, 8, EXPLORE_BUDGET).map_err(e)?;
        let fixed_for =
            |l: Dfa| move |n: usize| sparse_fixed_algorithm(&l, FixedWindowSpec::new(n));
        let fx = fixed_space_profile(fixed_for(lx.clone()), 8, EXPLORE_BUDGET).map_err(e)?;
        let fy = fixed_space_profile(fixed_for(ly.clone()), 8, EXPLORE_BUDGET).map_err(e)?;
        let fp = fixed_space_profile(
            |n| {
                let s = FixedWindowSpec::new(n);
                BooleanProduct::new(
                    vec![
                        sparse_fixed_algorithm(&lx, s)?,
                        sparse_fixed_algorithm(&ly, s)?,
                    ],
                    f.clone(),
                )
            },
            8,
            EXPLORE_BUDGET,
        )
        .map_err(e)?;
        for n in 0..=8 {
            ensure(pp.at(n) <= 2 * (px.at(n) + py.at(n)), || {
                format!("{x},{y} variable n={n}")
            })?;
            ensure(fp.at(n) <= 2 * (fx.at(n) + fy.at(n)), || {
                format!(
                    "{x},{y} fixed n={n}: {} vs {} + {}",
                    fp.at(n),
                    fx.at(n),
                    fy.at(n)
                )
            })?;
            checked += 2;
        }
    }
    // reductions: L to ψ_L(L) through the ψ transducer, and a relabeling
    let mut reductions: Vec<(String, MealyMachine, Dfa, Dfa)> = Vec::new();
    for name in ["Σ*a", "Σ*abΣ*", "a*", "L_1"] {
        let l = by(name);
        reductions.push((
            format!("ψ on {name}"),
            psi_mealy(&l).map_err(e)?,
            psi_language_dfa(&l).map_err(e)?,
            l,
        ));
    }
    let flip = MealyMachine::relabel(&ab(), &ab(), &[1, 0]).map_err(e)?;
    let even_a = by("even #a");
    let even_b = dfa(
        &["e", "o"],
        &[0],
        &[(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)],
    );
    reductions.push(("relabel a↔b".into(), flip, even_a, even_b));
    for (name, m, target, source) in reductions {
        let d = m.num_states();
        let inner = optimal_variable_algorithm(&target).map_err(e)?;
        let pt = variable_space_profile(&inner, 8, EXPLORE_BUDGET).map_err(e)?;
        let red = reduce_via_mealy(inner, m).map_err(e)?;
        for w in source.alphabet().words_up_to(6) {
            let stream: Vec<StreamToken> = w.iter().map(|&a| StreamToken::Symbol(a)).collect();
            ensure(red.accepts_stream(&stream) == source.accepts(&w), || {
                format!("{name}: reduction wrong")
            })?;
        }
        let pr = variable_space_profile(&red, 8, EXPLORE_BUDGET).map_err(e)?;
        for n in 0..=8 {
            ensure(pr.at(n) <= 2 * d * pt.at(n), || {
                format!("{name}, n={n}: {} > 2·{d}·{}", pr.at(n), pt.at(n))
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} profile inequalities"))
}

fn ac9() -> Check {
    let payload = GadgetAlphabet::payload();
    let (a, b) = (GadgetAlphabet::A, GadgetAlphabet::B);
    let a_star = Nfa::new(payload.clone(), vec!["s".into()], [0], [(0, a, 0)], [0]).map_err(e)?;
    let b_a_star = Nfa::new(
        payload.clone(),
        vec!["s".into(), "t".into()],
        [0],
        [(0, b, 1), (1, a, 1)],
        [1],
    )
    .map_err(e)?;
    let a_star_dfa = determinize(&a_star).map_err(e)?;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut universal = 0;
    for i in 0..20 {
        let states = 1 + i % 3;
        let nfa = random_nfa(&mut rng, &payload, states, 0.5);
        let rho = gen_rho_const(&nfa).map_err(e)?;
        let tail = determinize(&concat(&nfa, &b_a_star).map_err(e)?).map_err(e)?;
        let oracle = combine(BoolOp::Union, &a_star_dfa, Some(&tail)).map_err(e)?;
        ensure(
            equivalent(&determinize(&rho).map_err(e)?, &oracle).map_err(e)?,
            || format!("payload #{i}: ρ language"),
        )?;
        let m = minimize(&determinize(&nfa).map_err(e)?);
        let is_universal = m.num_states() == 1 && m.is_final(m.initial());
        let answer = decide(Problem::Nfa1, &rho, EXPLORE_BUDGET)
            .map_err(e)?
            .answer;
        ensure(answer == is_universal, || {
            format!("payload #{i}: nfa1 = {answer}, universal = {is_universal}")
        })?;
        universal += usize::from(is_universal);
    }
    Ok(format!("20 random NFAs ({universal} universal)"))
}

fn ac10() -> Check {
    let mut dfas: Vec<Dfa> = corpus()
        .into_iter()
        .map(|l| minimize(&l.dfa))
        .filter(|d| d.num_states() <= 3)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let abc = Alphabet::chars("abc").unwrap();
    for m in 1..=3 {
        for _ in 0..5 {
            dfas.push(random_dfa(&mut rng, &ab(), m));
            dfas.push(random_dfa(&mut rng, &abc, m));
        }
    }
    let mut worst = 0.0f64;
    for d in &dfas {
        let m = d.num_states();
        let sccs = d.sccs();
        for n in 0..=6 {
            let mut seen = HashSet::new();
            for start in d.states() {
                for w in d.alphabet().words_of_length(n) {
                    seen.insert(slidewin::classify::summary::path_summary_with(
                        d, &sccs, start, &w,
                    ));
                }
            }
            let bound = std::f64::consts::E.powi(m as i32) * ((n + m) as f64).powi(m as i32);
            ensure((seen.len() as f64) <= bound, || {
                format!("m={m}, n={n}: {} summaries > {bound:.1}", seen.len())
            })?;
            worst = worst.max(seen.len() as f64 / bound);
        }
    }
    let _ = path_summary;
    Ok(format!(
        "{} DFAs, n = 0..6, max count/bound = {worst:.3}",
        dfas.len()
    ))
}

fn main() -> ExitCode {
    let checks: [(&str, fn() -> Check); 10] = [
        ("AC1", ac1),
        ("AC2", ac2),
        ("AC3", ac3),
        ("AC4", ac4),
        ("AC5", ac5),
        ("AC6", ac6),
        ("AC7", ac7),
        ("AC8", ac8),
        ("AC9", ac9),
        ("AC10", ac10),
    ];
    let mut failed = 0;
    for (name, check) in checks {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] {name} {detail} ({secs:.2}s)"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {name} {detail} ({secs:.2}s)");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        checks.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
