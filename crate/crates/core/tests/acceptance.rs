//! Acceptance suite. Prints one PASS/FAIL line per check and exits non-zero
//! on any unexpected result.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use common::{all_perms, b, checks, g, gs, p, DEPTHS, HEXAGON, ORACLE_BASES, QUARTIC, SCHROEDER};
use permscheme::oracle::{avoiders, brute_avoiders_with_cap, brute_sequence};
use permscheme::triage::{
    finlabel_applicable, insertion_regular, simple_finiteness, InsertionVerdict, SimpleVerdict,
};
use permscheme::{
    build_scheme, build_scheme_with, es_plus_reducible, es_reducible, eval_sequence,
    reduction_gap_basis, scheme_depth, zset_count, Basis, BuildOptions, BuildOutcome, Count,
    GapVector, Mode, Permutation, Scheme, ZSetCounter,
};
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::{Config, RngSeed, TestRunner};

type Check = Result<String, String>;

/// Checks that fail for a documented reason. The suite still prints them as
/// FAIL, and complains if one of them starts passing.
const KNOWN_FAILURES: &[(&str, &str)] = &[(
    "10b",
    "738291645 lies in the SB(4) basis and avoids 1234 and 4231, so the least k is 5",
)];

fn scheme_for(basis: &str, depth: usize) -> Result<Scheme, String> {
    match build_scheme(&b(basis), depth).map_err(|e| e.to_string())? {
        BuildOutcome::Scheme(s) => Ok(s),
        BuildOutcome::Frontier(f) => Err(format!("Av({basis}): frontier of {} at depth {depth}", f.len())),
    }
}

fn counts(v: &[u64]) -> Vec<Count> {
    v.iter().map(|&c| Count::from(c)).collect()
}

fn fail_if(problems: Vec<String>, ok: String) -> Check {
    if problems.is_empty() {
        Ok(ok)
    } else {
        Err(problems.join("; "))
    }
}

fn oracle_equivalence() -> Check {
    let mut problems = Vec::new();
    for basis in ORACLE_BASES {
        let s = match scheme_for(basis, 6) {
            Ok(s) => s,
            Err(e) => {
                problems.push(e);
                continue;
            }
        };
        let brute = brute_sequence(&b(basis), 9, 9).map_err(|e| e.to_string())?;
        let via_scheme = eval_sequence(&s, 9).map_err(|e| e.to_string())?;
        if via_scheme != counts(&brute) {
            problems.push(format!("Av({basis}): scheme {via_scheme:?} vs brute {brute:?}"));
        }
    }
    fail_if(problems, format!("{} bases agree for n ≤ 9", ORACLE_BASES.len()))
}

fn depth_table() -> Check {
    let mut problems = Vec::new();
    for (basis, expected) in DEPTHS {
        match scheme_for(basis, 6) {
            Ok(s) if scheme_depth(&s) == expected => {}
            Ok(s) => problems.push(format!("Av({basis}): depth {} ≠ {expected}", scheme_depth(&s))),
            Err(e) => problems.push(e),
        }
    }
    fail_if(problems, format!("{} depths match", DEPTHS.len()))
}

fn figure_triples() -> Check {
    let mut cases: Vec<(String, &str, usize, Vec<GapVector>)> = vec![
        ("1342,1432".into(), "12", 2, gs(&[&[0, 2, 0]])),
        ("1234".into(), "123", 3, gs(&[&[0, 0, 0, 1]])),
        ("1234".into(), "3124", 4, gs(&[&[0, 0, 0, 0, 1]])),
        (HEXAGON.into(), "1234", 1, gs(&[&[3, 1, 0, 0, 0], &[4, 0, 0, 0, 0]])),
        (
            HEXAGON.into(),
            "41235",
            1,
            gs(&[&[1, 0, 0, 0, 0, 0], &[0, 2, 1, 0, 0, 0], &[0, 3, 0, 0, 0, 0]]),
        ),
        ("231,4321".into(), "21", 1, gs(&[&[0, 1, 0], &[2, 0, 0]])),
        ("321,2341".into(), "21", 1, gs(&[&[1, 0, 0], &[0, 2, 0]])),
    ];
    for (a, bb) in [(1, 1), (1, 2), (2, 2)] {
        let m: Vec<String> = all_perms(a + bb + 1)
            .into_iter()
            .filter(|q| q.at(a + 1) == 1)
            .map(|q| q.to_string())
            .collect();
        cases.push((m.join(","), "1", 1, gs(&[&[a as u32, bb as u32]])));
    }
    let mut problems = Vec::new();
    for (basis, node, r, expected) in &cases {
        let z = ZSetCounter::new(b(basis));
        let pi = p(node);
        match es_plus_reducible(&z, &pi, *r) {
            Ok(true) => {}
            other => {
                problems.push(format!("Av({basis}) {node} d_{r}: reducible = {other:?}"));
                continue;
            }
        }
        let got = reduction_gap_basis(&z, &pi, *r).map_err(|e| e.to_string())?;
        let mut want = expected.clone();
        want.sort_by_key(|v| v.to_string());
        let mut have = got.excluded_basis().to_vec();
        have.sort_by_key(|v| v.to_string());
        if have != want {
            problems.push(format!("Av({basis}) {node} d_{r}: {got}"));
        }
    }
    fail_if(problems, format!("{} triples reproduced", cases.len()))
}

fn closed_forms() -> Check {
    let mut problems = Vec::new();
    let quartic: Vec<Count> = std::iter::once(Count::from(1u32))
        .chain((1..=12u32).map(|n| (Count::from(4u32).pow(n - 1) + 2u32) / 3u32))
        .collect();
    for basis in QUARTIC {
        let s = scheme_for(basis, 6)?;
        if eval_sequence(&s, 12).map_err(|e| e.to_string())? != quartic {
            problems.push(format!("Av({basis}) is not (4^(n-1)+2)/3"));
        }
    }
    let schroeder = counts(&[1, 1, 2, 6, 22, 90, 394, 1806, 8558, 41586]);
    let mut long: Option<Vec<Count>> = None;
    for basis in SCHROEDER {
        let brute = counts(&brute_sequence(&b(basis), 9, 9).map_err(|e| e.to_string())?);
        if brute != schroeder {
            problems.push(format!("Av({basis}) brute force is not Schröder"));
        }
        let s = scheme_for(basis, 6)?;
        let seq = eval_sequence(&s, 12).map_err(|e| e.to_string())?;
        if seq[..=9] != schroeder[..] {
            problems.push(format!("Av({basis}) scheme is not Schröder up to 9"));
        }
        match &long {
            None => long = Some(seq),
            Some(first) if *first != seq => problems.push(format!("Av({basis}) disagrees at n ≤ 12")),
            Some(_) => {}
        }
    }
    let tail = long.map(|s| s[12].to_string()).unwrap_or_default();
    fail_if(
        problems,
        format!("4 quartic classes to n = 12, 7 Schröder classes agree (s_12 = {tail})"),
    )
}

fn hexagon() -> Check {
    let start = Instant::now();
    let s = scheme_for(HEXAGON, 6)?;
    let found = start.elapsed();
    let seq = eval_sequence(&s, 16).map_err(|e| e.to_string())?;
    let mut problems = Vec::new();
    for n in 7..=16 {
        // s_n + 11 s_{n-2} + 4 s_{n-4} + 4 s_{n-5} = 6 s_{n-1} + 9 s_{n-3} + s_{n-6}
        let lhs = &seq[n] + &seq[n - 2] * 11u32 + &seq[n - 4] * 4u32 + &seq[n - 5] * 4u32;
        let rhs = &seq[n - 1] * 6u32 + &seq[n - 3] * 9u32 + &seq[n - 6];
        if lhs != rhs {
            problems.push(format!("recurrence fails at n = {n}"));
        }
    }
    let brute = counts(&brute_sequence(&b(HEXAGON), 8, 8).map_err(|e| e.to_string())?);
    if seq[..=8] != brute[..] {
        problems.push("brute force disagrees for n ≤ 8".into());
    }
    fail_if(
        problems,
        format!("recurrence holds for 7 ≤ n ≤ 16, s_16 = {}, discovery {:.1?}", seq[16], found),
    )
}

fn negative_results() -> Check {
    let mut problems = Vec::new();
    match build_scheme(&b("2413,3142"), 5).map_err(|e| e.to_string())? {
        BuildOutcome::Frontier(f) => {
            if !avoiders(&b("213,312"), 5).iter().all(|q| f.contains(q)) {
                problems.push("separable frontier misses part of Av_5(213,312)".into());
            }
        }
        BuildOutcome::Scheme(_) => problems.push("Av(2413,3142) found a scheme at depth 5".into()),
    }
    let z = ZSetCounter::new(b("2413,3142"));
    let mut tested = 0;
    for k in 1..=5 {
        for pi in avoiders(&b("213,312"), k) {
            for r in 1..=k {
                tested += 1;
                if es_plus_reducible(&z, &pi, r).map_err(|e| e.to_string())? {
                    problems.push(format!("{pi} is reducible at {r} in Av(2413,3142)"));
                }
            }
        }
    }
    let z = ZSetCounter::new(b("1234,4231"));
    for k in 1..=5 {
        let pi = Permutation::decreasing(k);
        for r in 1..=k {
            if es_plus_reducible(&z, &pi, r).map_err(|e| e.to_string())? {
                problems.push(format!("{pi} is reducible at {r} in Av(1234,4231)"));
            }
        }
    }
    for basis in ["2341,2413", "2431,3241", "2413,3142"] {
        if !build_scheme(&b(basis), 5).map_err(|e| e.to_string())?.is_frontier() {
            problems.push(format!("Av({basis}) found a scheme at depth 5"));
        }
    }
    fail_if(problems, format!("{tested} separable entries irreducible, 3 frontiers"))
}

fn classic_gap() -> Check {
    let z = ZSetCounter::new(b("1342,1432"));
    let twelve = p("12");
    let mut problems = Vec::new();
    for r in 1..=2 {
        if es_reducible(&z, &twelve, r).map_err(|e| e.to_string())? {
            problems.push(format!("12 is ES-reducible at {r}"));
        }
    }
    if !(1..=2).any(|r| es_plus_reducible(&z, &twelve, r).unwrap_or(false)) {
        problems.push("12 is not ES⁺-reducible".into());
    }
    let classic = build_scheme_with(
        &b("1342,1432"),
        &BuildOptions {
            max_depth: 4,
            mode: Mode::Classic,
        },
    )
    .map_err(|e| e.to_string())?;
    if !classic.is_frontier() {
        problems.push("classic mode found a scheme at depth 4".into());
    }
    fail_if(problems, "12 fails the classic test at both entries; classic search stalls at depth 4".into())
}

fn zset_table() -> Check {
    let rows: [([u32; 3], u64, u64); 10] = [
        ([0, 0, 0], 1, 1),
        ([0, 0, 1], 1, 1),
        ([1, 0, 0], 1, 1),
        ([0, 0, 2], 1, 1),
        ([1, 0, 1], 2, 2),
        ([2, 0, 0], 2, 2),
        ([0, 0, 3], 1, 1),
        ([1, 0, 2], 3, 3),
        ([2, 0, 1], 5, 5),
        ([3, 0, 0], 5, 5),
    ];
    let basis = b("132");
    let mut problems = Vec::new();
    for (v, left, right) in rows {
        let gv = g(&v);
        let here = zset_count(&basis, &p("12"), &gv).map_err(|e| e.to_string())?;
        let merged = gv.gap_delete(1).map_err(|e| e.to_string())?;
        let there = zset_count(&basis, &p("1"), &merged).map_err(|e| e.to_string())?;
        if here != Count::from(left) || there != Count::from(right) {
            problems.push(format!("{gv}: {here} / {there}"));
        }
    }
    fail_if(problems, "10 rows reproduced".into())
}

fn property_suites() -> Check {
    let mut runner = TestRunner::new(Config {
        rng_seed: RngSeed::Fixed(20_08),
        ..Config::default()
    });
    let bases: Vec<Basis> = ORACLE_BASES.iter().map(|s| b(s)).collect();
    let strategy = (0..bases.len(), 0..=3usize)
        .prop_flat_map(|(i, k)| {
            (
                proptest::strategy::Just(i),
                proptest::strategy::Just((1..=k).collect::<Vec<usize>>()).prop_shuffle(),
                proptest::collection::vec(0..=5u32, k + 1),
            )
        })
        .prop_filter("norm in 1..=5", |(_, _, v)| (1..=5).contains(&v.iter().sum::<u32>()));
    let mut problems = Vec::new();
    for _ in 0..200 {
        let (i, perm, v) = strategy.new_tree(&mut runner).map_err(|e| e.to_string())?.current();
        let pi = Permutation::new(perm).map_err(|e| e.to_string())?;
        if let Err(e) = checks::expansion_identity(&bases[i], &pi, &g(&v)) {
            problems.push(e);
        }
    }
    let mut evaluated = 0;
    for basis in ORACLE_BASES {
        let s = scheme_for(basis, 6)?;
        let max_norm = s.basis().max_len() as u32 + 2;
        match checks::eval_matches_zset(&s, max_norm) {
            Ok(n) => evaluated += n,
            Err(e) => problems.push(e),
        }
        for check in [checks::round_trips(&s), checks::ideals_well_formed(&s, 5), checks::verifies(&s)] {
            if let Err(e) = check {
                problems.push(e);
            }
        }
    }
    fail_if(
        problems,
        format!("200 expansion instances, {evaluated} eval/zset queries, round trips and ideals"),
    )
}

fn triage_finlabel() -> Check {
    let mut problems = Vec::new();
    for basis in ["132,231", "123,3214,2143,15432", "321,2341,3412,4123"] {
        if !finlabel_applicable(&b(basis)).applicable() {
            problems.push(format!("Av({basis}) should be finitely labeled"));
        }
    }
    if finlabel_applicable(&b("2413,3142")).applicable() {
        problems.push("Av(2413,3142) should not be finitely labeled".into());
    }
    fail_if(problems, "3 finitely labeled, separables not".into())
}

fn triage_insertion() -> Check {
    match insertion_regular(&b("1234,4231"), 4).map_err(|e| e.to_string())? {
        InsertionVerdict::Regular(k) if k <= 4 => Ok(format!("Av(1234,4231) ⊆ SB({k})")),
        other => {
            let wider = insertion_regular(&b("1234,4231"), 6).map_err(|e| e.to_string())?;
            Err(format!("k_max = 4 gives {other:?}; k_max = 6 gives {wider:?}"))
        }
    }
}

fn triage_simples() -> Check {
    let mut problems = Vec::new();
    let trivial = vec![p("1"), p("12"), p("21")];
    for basis in ["2413,3142", "132"] {
        match simple_finiteness(&b(basis), 9).map_err(|e| e.to_string())? {
            SimpleVerdict::FinitelyMany { simples, .. } if simples == trivial => {}
            other => problems.push(format!("Av({basis}): {other:?}")),
        }
    }
    // even-length prefixes of 4,1,6,3,8,5,…
    let footnote = [p("3142"), p("315264"), p("31527486")];
    match simple_finiteness(&b("321,2341,3412,4123"), 9).map_err(|e| e.to_string())? {
        SimpleVerdict::Inconclusive { found, .. } => {
            for q in &footnote {
                if !found.contains(q) {
                    problems.push(format!("{q} missing from the simples found"));
                }
            }
        }
        other => problems.push(format!("Av(321,2341,3412,4123): {other:?}")),
    }
    fail_if(problems, "separables and Av(132) finite; 3142, 315264, 31527486 found".into())
}

fn triage_erdos_szekeres() -> Check {
    let mut problems = Vec::new();
    for j in 1..=4 {
        for k in 1..=4 {
            let basis = Basis::new([Permutation::identity(j), Permutation::decreasing(k)])
                .map_err(|e| e.to_string())?;
            let threshold = (j - 1) * (k - 1) + 1;
            for n in 0..=threshold + 1 {
                let zero = brute_avoiders_with_cap(&basis, n, threshold + 1).map_err(|e| e.to_string())? == 0;
                if zero != (n >= threshold) {
                    problems.push(format!("j={j} k={k} n={n}"));
                }
            }
        }
    }
    fail_if(problems, "j, k ≤ 4".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, &str, fn() -> Check); 13] = [
        ("1", "oracle equivalence", oracle_equivalence),
        ("2", "depth table", depth_table),
        ("3", "figure triples", figure_triples),
        ("4", "closed forms", closed_forms),
        ("5", "hexagon recurrence", hexagon),
        ("6", "negative results", negative_results),
        ("7", "classic-mode gap", classic_gap),
        ("8", "Z-set table", zset_table),
        ("9", "property suites", property_suites),
        ("10a", "triage: finitely labeled trees", triage_finlabel),
        ("10b", "triage: insertion encoding of Av(1234,4231) within SB(4)", triage_insertion),
        ("10c", "triage: simple permutations", triage_simples),
        ("10d", "triage: Erdős–Szekeres", triage_erdos_szekeres),
    ];
    let mut unexpected = 0;
    for (id, name, check) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let known = KNOWN_FAILURES.iter().find(|(k, _)| *k == id);
        match (&result, known) {
            (Ok(detail), None) => println!("PASS  {id:<4} {name}: {detail} [{elapsed:.1?}]"),
            (Err(why), Some((_, reason))) => {
                println!("FAIL  {id:<4} {name}: {why} (known: {reason}) [{elapsed:.1?}]")
            }
            (Err(why), None) => {
                unexpected += 1;
                println!("FAIL  {id:<4} {name}: {why} [{elapsed:.1?}]");
            }
            (Ok(detail), Some(_)) => {
                unexpected += 1;
                println!("PASS  {id:<4} {name}: {detail}, but it is listed as a known failure [{elapsed:.1?}]");
            }
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} unexpected result(s)");
        ExitCode::FAILURE
    }
}
