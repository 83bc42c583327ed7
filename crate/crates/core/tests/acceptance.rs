//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use sarct::corpus::{load_corpus, tag_corpus};
use sarct::evaluation::{
    cross_validate, dice, evaluate_pairs, exact_match, CvSettings, FoldPlan, Granularity, Labeled, Slice,
};
use sarct::pipeline::{integrate, IntegratorMode, TargetAnnotation};
use sarct::rules::{apply_rule, combine_weighted_majority, CandidateSet, RuleId, RuleWeights};
use sarct::sentiment::Lexicon;
use sarct::statistical::{decompose, predict_word, train, TrainConfig};
use sarct::text::TaggerModel;
use sarct::Error;

type Outcome = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn fixture_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/fixture.tsv")
}

fn fixture() -> (Vec<String>, Vec<Labeled>) {
    let docs = load_corpus(&fixture_path()).expect("fixture loads");
    let labeled = tag_corpus(&docs, &TaggerModel::bundled()).expect("fixture tags");
    (docs.into_iter().map(|d| d.id).collect(), labeled)
}

fn sarct(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_sarct")).args(args).env_remove("SARCT_MODEL_DIR").output().expect("sarct runs")
}

fn sarct_stdout(args: &[&str]) -> std::result::Result<String, String> {
    let out = sarct(args);
    if !out.status.success() {
        return Err(format!("`sarct {}` failed: {}", args.join(" "), String::from_utf8_lossy(&out.stderr)));
    }
    Ok(String::from_utf8(out.stdout).expect("utf-8 output"))
}

fn run_props(cases: u32, f: impl FnOnce(&mut TestRunner) -> std::result::Result<(), String>) -> Outcome {
    let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
    f(&mut runner).map(|_| format!("{cases} generated cases per property, 0 violations"))
}

// 1 -------------------------------------------------------------------------

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let (ids, labeled) = fixture();
    let lex = Lexicon::bundled();
    let sentence = |id: &str| &labeled[ids.iter().position(|x| x == id).expect("fixture id")].0;
    let words = |id: &str, ws: &[&str]| {
        let s = sentence(id);
        let mut claimed = BTreeSet::new();
        for w in ws {
            let i =
                (0..s.len()).find(|i| !claimed.contains(i) && s.tokens[*i].surface == *w).expect("word in sentence");
            claimed.insert(i);
        }
        Some(CandidateSet::from_indices(claimed))
    };
    let exemplars = [
        (RuleId::R1, "t06", words("t06", &["I", "my", "job"])),
        (RuleId::R2, "t07", words("t07", &["Olly", "Riley"])),
        (RuleId::R3, "t03", words("t03", &["being", "ignored"])),
        (RuleId::R4, "t08", words("t08", &["to", "have", "a", "test", "on", "my", "birthday"])),
        (RuleId::R5, "t09", words("t09", &["Being", "covered", "in", "rashes"])),
        (RuleId::R6, "t12", words("t12", &["walls"])),
        (RuleId::R7, "t14", words("t14", &["life"])),
        (RuleId::R8, "t04", words("t04", &["He", "Tiger", "Woods"])),
        (RuleId::R9, "t15", words("t15", &["this", "jacket"])),
    ];
    let extra = [
        (RuleId::R3, "t05", Some(CandidateSet::outside())),
        (RuleId::R3, "t23", Some(CandidateSet::outside())),
        (RuleId::R5, "t10", words("t10", &["Being", "covered", "in", "hives"])),
        (RuleId::R5, "t11", words("t11", &["to", "wake", "up", "early", "to", "babysit"])),
        (RuleId::R6, "t13", words("t13", &["donut"])),
    ];
    let mut failures = Vec::new();
    let mut passed = 0;
    for (r, id, expected) in &exemplars {
        let got = apply_rule(*r, sentence(id), lex);
        if &got == expected {
            passed += 1;
        } else {
            failures.push(format!("{r} on {id}: got {got:?}"));
        }
    }
    for (r, id, expected) in &extra {
        let got = apply_rule(*r, sentence(id), lex);
        if &got != expected {
            failures.push(format!("{r} on {id}: got {got:?}"));
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(5) {
        failures.push(format!("took {elapsed:?}"));
    }
    if failures.is_empty() {
        Ok(format!("{passed}/9 exemplars exact, {} further checks, {elapsed:.2?}", extra.len()))
    } else {
        Err(failures.join("; "))
    }
}

// 2 -------------------------------------------------------------------------

fn arb_target() -> impl Strategy<Value = TargetAnnotation> {
    prop_oneof![
        1 => Just(TargetAnnotation::Outside),
        4 => proptest::collection::btree_set(0usize..10, 1..6).prop_map(TargetAnnotation::Words),
    ]
}

fn criterion_2() -> Outcome {
    run_props(1000, |runner| {
        runner
            .run(&(arb_target(), arb_target()), |(p, g)| {
                let d = dice(&p, &g);
                prop_assert!((0.0..=1.0).contains(&d));
                prop_assert_eq!(d, dice(&g, &p));
                prop_assert_eq!(d == 1.0, p == g);
                if exact_match(&p, &g) {
                    prop_assert_eq!(d, 1.0);
                }
                Ok(())
            })
            .map_err(|e| format!("pair algebra: {e}"))?;
        runner
            .run(&proptest::collection::vec(arb_target(), 1..30), |preds| {
                let golds = vec![TargetAnnotation::Outside; preds.len()];
                let r = evaluate_pairs(preds.iter().zip(&golds), Slice::Overall);
                prop_assert_eq!(r.em, r.dice);
                Ok(())
            })
            .map_err(|e| format!("EM == DS on Outside gold: {e}"))
    })
}

// 3 -------------------------------------------------------------------------

fn arb_candidate() -> impl Strategy<Value = CandidateSet> {
    prop_oneof![
        1 => Just(CandidateSet::outside()),
        5 => proptest::collection::btree_set(0usize..10, 0..6).prop_map(CandidateSet::from_indices),
    ]
}

fn as_set(t: &TargetAnnotation) -> BTreeSet<usize> {
    t.words().cloned().unwrap_or_default()
}

fn criterion_3() -> Outcome {
    run_props(1000, |runner| {
        runner
            .run(&(arb_candidate(), arb_candidate()), |(r, s)| {
                let and = integrate(&r, &s, IntegratorMode::HybridAnd);
                let or = integrate(&r, &s, IntegratorMode::HybridOr);
                for c in [&r, &s] {
                    prop_assert!(as_set(&and).is_subset(c.words()));
                    prop_assert!(c.words().is_subset(&as_set(&or)));
                }
                if r.words().intersection(s.words()).next().is_none() {
                    prop_assert!(and.is_outside());
                }
                if r.is_outside_vote() && s.is_outside_vote() {
                    prop_assert!(or.is_outside());
                }
                Ok(())
            })
            .map_err(|e| e.to_string())
    })
}

// 4 -------------------------------------------------------------------------

/// Exhaustive scoring: every word's summed weight, the outside pseudo-word's
/// summed weight, and the set of maximal words. Outside wins only when it
/// scores strictly higher than every word.
fn oracle_combine(votes: &[(f64, Option<&CandidateSet>)], n: usize) -> Option<CandidateSet> {
    let present: Vec<(f64, &CandidateSet)> = votes.iter().filter_map(|(w, c)| c.map(|c| (*w, c))).collect();
    if present.is_empty() {
        return None;
    }
    let score = |i: usize| present.iter().filter(|(_, c)| c.words().contains(&i)).map(|(w, _)| w).sum::<f64>();
    let voted: Vec<usize> = (0..n).filter(|i| present.iter().any(|(_, c)| c.words().contains(i))).collect();
    let any_outside = present.iter().any(|(_, c)| c.is_outside_vote());
    if voted.is_empty() {
        return Some(if any_outside { CandidateSet::outside() } else { CandidateSet::empty() });
    }
    let best = voted.iter().map(|&i| score(i)).fold(f64::MIN, f64::max);
    let outside: f64 = present.iter().filter(|(_, c)| c.is_outside_vote()).map(|(w, _)| w).sum();
    if any_outside && outside > best {
        return Some(CandidateSet::outside());
    }
    Some(CandidateSet::from_indices(voted.into_iter().filter(|&i| score(i) == best)))
}

/// Each rule either does not match, votes outside, or votes for a subset of
/// the `n` tokens.
fn vote_options(n: usize) -> Vec<Option<CandidateSet>> {
    let mut v = vec![None, Some(CandidateSet::outside())];
    for mask in 0u32..(1 << n) {
        v.push(Some(CandidateSet::from_indices((0..n).filter(|i| mask & (1 << i) != 0))));
    }
    v
}

fn brute_force_majority() -> std::result::Result<usize, String> {
    let rules = [RuleId::R1, RuleId::R2, RuleId::R3];
    let weight_sets: [[f64; 3]; 4] = [[0.25, 0.5, 0.75], [0.5, 0.5, 0.5], [1.0, 0.25, 0.25], [0.0, 0.5, 1.0]];
    let mut checked = 0;
    for ws in weight_sets {
        let mut weights = RuleWeights::uniform(0.0);
        for (r, w) in rules.iter().zip(ws) {
            weights.set(*r, w);
        }
        for n_rules in 1..=3 {
            for n in 1..=6 {
                let options = vote_options(n);
                let combos = options.len().pow(n_rules as u32);
                for code in 0..combos {
                    let mut rest = code;
                    let mut picks = Vec::with_capacity(n_rules);
                    for _ in 0..n_rules {
                        picks.push(&options[rest % options.len()]);
                        rest /= options.len();
                    }
                    let map: BTreeMap<RuleId, CandidateSet> =
                        rules.iter().zip(&picks).filter_map(|(r, c)| c.as_ref().map(|c| (*r, c.clone()))).collect();
                    let votes: Vec<(f64, Option<&CandidateSet>)> =
                        rules.iter().zip(&picks).map(|(r, c)| (weights.get(*r), c.as_ref())).collect();
                    let expected = oracle_combine(&votes, n);
                    let got = combine_weighted_majority(&map, &weights);
                    match (&expected, &got) {
                        (None, Err(Error::NothingToCombine)) => {}
                        (Some(e), Ok(g)) if e == g => {}
                        _ => return Err(format!("votes {map:?} weights {ws:?}: expected {expected:?}, got {got:?}")),
                    }
                    if let Ok(g) = &got {
                        for c in [0.5, 3.0, 1024.0] {
                            if combine_weighted_majority(&map, &weights.scaled(c)).as_ref().ok() != Some(g) {
                                return Err(format!("scaling by {c} changed the result for {map:?}"));
                            }
                        }
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(checked)
}

fn criterion_4() -> Outcome {
    let patterns = brute_force_majority()?;
    let weights = proptest::array::uniform9(0.0f64..=1.0);
    let votes = proptest::collection::btree_map(proptest::sample::select(RuleId::ALL.to_vec()), arb_candidate(), 1..9);
    run_props(1000, |runner| {
        runner
            .run(&(weights, votes, 1u32..8), |(ws, map, e)| {
                let mut w = RuleWeights::uniform(0.0);
                for (r, x) in RuleId::ALL.iter().zip(ws) {
                    w.set(*r, x);
                }
                let base = combine_weighted_majority(&map, &w).unwrap();
                let c = f64::powi(2.0, e as i32);
                prop_assert_eq!(&combine_weighted_majority(&map, &w.scaled(c)).unwrap(), &base);
                // an extra vote for a winning word keeps it winning
                for &winner in base.words() {
                    for r in RuleId::ALL {
                        let mut more = map.clone();
                        match more.get(&r) {
                            Some(c) if c.is_outside_vote() => continue,
                            Some(c) => {
                                let mut ix = c.words().clone();
                                ix.insert(winner);
                                more.insert(r, CandidateSet::from_indices(ix));
                            }
                            None => {
                                more.insert(r, CandidateSet::from_indices([winner]));
                            }
                        }
                        prop_assert!(combine_weighted_majority(&more, &w).unwrap().words().contains(&winner));
                    }
                }
                Ok(())
            })
            .map_err(|e| e.to_string())
    })
    .map(|s| format!("{patterns} vote patterns enumerated against the oracle; {s}"))
}

// 5 -------------------------------------------------------------------------

fn criterion_5() -> Outcome {
    let (ids, labeled) = fixture();
    let lex = Lexicon::bundled();
    let mut instances = Vec::new();
    for (k, (s, g)) in labeled.iter().enumerate() {
        let d = decompose(s, g, lex, k).map_err(|e| e.to_string())?;
        if d.len() != s.len() {
            return Err(format!("{}: {} instances for {} tokens", ids[k], d.len(), s.len()));
        }
        instances.extend(d);
    }
    let cfg = TrainConfig { epochs: 200, l2: 0.0, ..TrainConfig::default() };
    let model = train(&instances, &cfg).map_err(|e| e.to_string())?;
    let correct = instances.iter().filter(|x| predict_word(&model, &x.features) == x.label).count();
    let acc = correct as f64 / instances.len() as f64;
    let msg = format!(
        "{correct}/{} training labels reproduced ({:.2}%), decompose exact on {} sentences",
        instances.len(),
        100.0 * acc,
        labeled.len()
    );
    if acc >= 0.95 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

// 6 -------------------------------------------------------------------------

fn criterion_6() -> Outcome {
    let corpus = fixture_path();
    let corpus = corpus.to_str().unwrap();
    let eval = sarct_stdout(&["eval", "--corpus", corpus])?;
    let systems = [
        "Baseline 1: All Objective Words",
        "Baseline 2: Seq. Labeling",
        "Only Rule-Based",
        "Only Statistical",
        "Hybrid OR",
        "Hybrid AND",
    ];
    let lines: Vec<&str> = eval.lines().collect();
    let table_rows = |from: usize| -> std::result::Result<(), String> {
        let header: Vec<&str> = lines.get(from).ok_or("missing header")?.split_whitespace().collect();
        if header != ["Approach", "EM", "DS", "n"] {
            return Err(format!("bad header {header:?}"));
        }
        for (k, name) in systems.iter().enumerate() {
            let line = lines.get(from + 1 + k).ok_or("missing row")?;
            let rest = line.strip_prefix(name).ok_or_else(|| format!("row {k} is `{line}`, expected {name}"))?;
            let cols: Vec<&str> = rest.split_whitespace().collect();
            if cols.len() != 3 || cols[..2].iter().any(|c| *c != "n/a" && c.parse::<f64>().is_err()) {
                return Err(format!("row `{line}` lacks EM/DS/n columns"));
            }
        }
        Ok(())
    };
    table_rows(0)?;
    let outside = lines.iter().position(|l| *l == "Outside cases").ok_or("no Outside section")?;
    table_rows(outside + 1)?;

    let rules = sarct_stdout(&["rules", "--corpus", corpus])?;
    let lines: Vec<&str> = rules.lines().collect();
    let header = lines.first().ok_or("empty rules output")?;
    for col in ["Rule", "Overall EM", "Overall DS", "Conditional EM", "Conditional DS"] {
        if !header.contains(col) {
            return Err(format!("rules header lacks `{col}`"));
        }
    }
    for (k, r) in RuleId::ALL.iter().enumerate() {
        let cols: Vec<&str> = lines.get(k + 1).ok_or("missing rule row")?.split_whitespace().collect();
        if cols.first() != Some(&r.to_string().as_str()) || cols.len() != 6 {
            return Err(format!("rule row {k} is {cols:?}"));
        }
    }

    let records = sarct_stdout(&["--format", "records", "eval", "--corpus", corpus])?;
    let n = records.lines().count();
    for line in records.lines() {
        let v: serde_json::Value = serde_json::from_str(line).map_err(|e| e.to_string())?;
        for key in ["name", "slice", "em", "dice", "n"] {
            if v.get(key).is_none() {
                return Err(format!("record lacks `{key}`: {line}"));
            }
        }
    }
    if n != 12 {
        return Err(format!("{n} eval records, expected 12"));
    }
    Ok("eval: 6 systems x (overall, Outside) with EM and DS; rules: 9 rows overall + conditional".into())
}

// 7 -------------------------------------------------------------------------

fn check_plan(plan: &FoldPlan, n: usize) -> std::result::Result<(), String> {
    let sizes = plan.fold_sizes();
    let (lo, hi) = (sizes.iter().min().unwrap(), sizes.iter().max().unwrap());
    if hi - lo > 1 {
        return Err(format!("fold sizes {sizes:?}"));
    }
    let mut seen = vec![0; n];
    for f in 0..plan.k {
        let test: BTreeSet<usize> = plan.test_ids(f).into_iter().collect();
        let train: BTreeSet<usize> = plan.train_ids(f).into_iter().collect();
        if !test.is_disjoint(&train) || test.len() + train.len() != n {
            return Err(format!("fold {f}: train/test overlap or gap"));
        }
        for i in test {
            seen[i] += 1;
        }
    }
    if seen.iter().any(|&c| c != 1) {
        return Err("test folds do not partition the instances".into());
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    let (_, labeled) = fixture();
    let n_words: usize = labeled.iter().map(|(s, _)| s.len()).sum();
    for (gran, n) in [(Granularity::Sentence, labeled.len()), (Granularity::WordInstance, n_words)] {
        for seed in [1, 42, 2024] {
            let a = FoldPlan::for_corpus(&labeled, 4, seed, gran).map_err(|e| e.to_string())?;
            check_plan(&a, n)?;
            let b = FoldPlan::for_corpus(&labeled, 4, seed, gran).map_err(|e| e.to_string())?;
            if a.assignment() != b.assignment() {
                return Err(format!("seed {seed}: fold assignment differs between runs"));
            }
        }
    }
    run_props(200, |runner| {
        runner
            .run(&(8usize..400, 2usize..8, any::<u64>()), |(n, k, seed)| {
                let plan = FoldPlan::new(n, k, seed, Granularity::WordInstance).unwrap();
                prop_assert!(check_plan(&plan, n).is_ok());
                Ok(())
            })
            .map_err(|e| e.to_string())
    })?;

    let settings = CvSettings {
        lexicon: Lexicon::bundled().clone(),
        train: TrainConfig::default(),
        weight_metric: Default::default(),
    };
    let plan = FoldPlan::for_corpus(&labeled, 4, 42, Granularity::WordInstance).map_err(|e| e.to_string())?;
    for mode in IntegratorMode::ALL {
        let a = cross_validate(&labeled, &plan, mode, &settings).map_err(|e| e.to_string())?;
        let b = cross_validate(&labeled, &plan, mode, &settings).map_err(|e| e.to_string())?;
        if a != b {
            return Err(format!("{mode}: reports differ between runs"));
        }
    }
    let corpus = fixture_path();
    let args = ["crossval", "--corpus", corpus.to_str().unwrap(), "--seed", "42"];
    if sarct_stdout(&args)? != sarct_stdout(&args)? {
        return Err("crossval output differs between runs".into());
    }
    Ok("sentence and word plans partition with skew <= 1, train/test disjoint, same seed -> same folds and report"
        .into())
}

// 8 -------------------------------------------------------------------------

/// Recounted by tests/oracles/corpus_stats.py, which shares no code with the
/// crate.
const ORACLE_STATS: [(&str, f64); 7] = [
    ("count", 25.0),
    ("avg_words", 10.08),
    ("vocabulary", 147.0),
    ("total_words", 252.0),
    ("avg_target_length", 2.263157894736842),
    ("avg_target_polarity_strength", 0.10526315789473684),
    ("avg_rest_polarity_strength", 1.24),
];

fn criterion_8() -> Outcome {
    let corpus = fixture_path();
    let out = sarct_stdout(&["--format", "records", "stats", "--corpus", corpus.to_str().unwrap()])?;
    let v: serde_json::Value = serde_json::from_str(out.trim()).map_err(|e| e.to_string())?;
    let mut failures = Vec::new();
    for (field, expected) in ORACLE_STATS {
        let got = v.get(field).and_then(|x| x.as_f64());
        let exact = matches!(field, "count" | "vocabulary" | "total_words");
        let ok = got.is_some_and(|g| if exact { g == expected } else { (g - expected).abs() <= 1e-9 });
        if !ok {
            failures.push(format!("{field}: got {got:?}, oracle {expected}"));
        }
    }
    if failures.is_empty() {
        Ok("7/7 fields match the independent recount".into())
    } else {
        Err(failures.join("; "))
    }
}

// 9 -------------------------------------------------------------------------

fn full_run(dir: &Path) -> std::result::Result<Vec<(String, Vec<u8>)>, String> {
    let corpus = fixture_path();
    let corpus = corpus.to_str().unwrap();
    let model = dir.join("linear_model.txt");
    let weights = dir.join("rule_weights.tsv");
    let report = dir.join("eval.jsonl");
    let (model_s, weights_s, report_s) = (model.to_str().unwrap(), weights.to_str().unwrap(), report.to_str().unwrap());
    sarct_stdout(&["--seed", "7", "train", "--corpus", corpus, "--out", model_s])?;
    sarct_stdout(&["--seed", "7", "calibrate", "--corpus", corpus, "--out", weights_s])?;
    let table = sarct_stdout(&[
        "--seed",
        "7",
        "eval",
        "--corpus",
        corpus,
        "--model",
        model_s,
        "--weights",
        weights_s,
        "--report",
        report_s,
    ])?;
    let read = |p: &Path| std::fs::read(p).map_err(|e| e.to_string());
    Ok(vec![
        ("model".into(), read(&model)?),
        ("weights".into(), read(&weights)?),
        ("report".into(), read(&report)?),
        ("eval table".into(), table.into_bytes()),
    ])
}

fn criterion_9() -> Outcome {
    let a = tempfile::tempdir().map_err(|e| e.to_string())?;
    let b = tempfile::tempdir().map_err(|e| e.to_string())?;
    let first = full_run(a.path())?;
    let second = full_run(b.path())?;
    for ((name, x), (_, y)) in first.iter().zip(&second) {
        if x != y {
            return Err(format!("{name} differs between runs"));
        }
    }
    Ok(format!("{} artifacts byte-identical across two runs", first.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("fixture rule coverage", criterion_1),
        ("metric algebra", criterion_2),
        ("integrator set algebra", criterion_3),
        ("weighted-majority properties", criterion_4),
        ("statistical extractor round trip", criterion_5),
        ("evaluation report structure", criterion_6),
        ("cross-validation integrity", criterion_7),
        ("corpus statistics oracle", criterion_8),
        ("determinism", criterion_9),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {detail}", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
