//! Acceptance gate: fourteen criteria, each a verification suite run at
//! fixed parameters within a wall-clock budget. Prints one line per
//! criterion and exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use posalg::lattice::LatticeMode;
use posalg::morphisms::EXHAUSTIVE_ELEMENT_POINTS;
use posalg::poset::{PosetFile, DEFAULT_ENUM_CAP};
use posalg::verify::{run, Suite, SuiteConfig, SuiteReport};

struct Criterion {
    id: usize,
    title: &'static str,
    config: SuiteConfig,
    budget: Duration,
    /// Extra conditions on the report beyond "no failures".
    extra: fn(&SuiteReport) -> Result<(), String>,
}

fn cfg(suite: Suite, f: impl FnOnce(&mut SuiteConfig)) -> SuiteConfig {
    let mut c = SuiteConfig::new(suite);
    c.max_size = 5;
    c.seed = 20240611;
    f(&mut c);
    c
}

fn at_least(n: usize) -> impl Fn(&SuiteReport) -> Result<(), String> {
    move |r| if r.cases >= n { Ok(()) } else { Err(format!("only {} cases, expected at least {n}", r.cases)) }
}

/// Every source algebra must be small enough for the element-wise scan
/// to cover all of its elements.
fn exhaustive_sources(r: &SuiteReport) -> Result<(), String> {
    at_least(200)(r)?;
    for v in &r.verdicts {
        let file: PosetFile = serde_json::from_value(v.params["source"].clone()).map_err(|e| e.to_string())?;
        let points =
            file.into_poset().and_then(|p| p.final_segments(DEFAULT_ENUM_CAP)).map_err(|e| e.to_string())?.len();
        if points > EXHAUSTIVE_ELEMENT_POINTS {
            return Err(format!("{}: {points} points would be sampled", v.poset));
        }
    }
    Ok(())
}

fn corpus_and_random(r: &SuiteReport) -> Result<(), String> {
    at_least(89)(r)?;
    let random = r.verdicts.iter().find(|v| v.poset == "random(n=8)").ok_or("random cases missing")?;
    if random.params["cases"] != 1000 {
        return Err(format!("random cases: {}", random.params["cases"]));
    }
    Ok(())
}

fn rado_growth(r: &SuiteReport) -> Result<(), String> {
    if r.extra.get("badArray") != Some(&serde_json::json!(true)) {
        return Err("identity array on front(2,12) is not bad".into());
    }
    let sizes: Vec<(u64, u64)> = r.extra["antichainSizes"]
        .as_array()
        .ok_or("antichainSizes missing")?
        .iter()
        .map(|s| (s["horizon"].as_u64().unwrap_or(0), s["size"].as_u64().unwrap_or(0)))
        .collect();
    if sizes.iter().map(|s| s.0).collect::<Vec<_>>() != [4, 5, 6] {
        return Err(format!("horizons {sizes:?}"));
    }
    if let Some((n, s)) = sizes.iter().find(|(n, s)| s + 1 < *n) {
        return Err(format!("antichain of {s} at N={n}"));
    }
    if sizes.windows(2).any(|w| w[0].1 > w[1].1) {
        return Err(format!("sizes not monotone: {sizes:?}"));
    }
    Ok(())
}

fn is_iso_cases(r: &SuiteReport) -> Result<(), String> {
    at_least(91)(r)?;
    for n in 3..=5 {
        let name = format!("rado({n})");
        if !r.verdicts.iter().any(|v| v.poset.starts_with(&name)) {
            return Err(format!("{name} missing"));
        }
    }
    Ok(())
}

fn criteria() -> Vec<Criterion> {
    let secs = Duration::from_secs;
    vec![
        Criterion {
            id: 1,
            title: "zero criterion for elementary products",
            config: cfg(Suite::Fact24, |_| {}),
            budget: secs(60),
            extra: corpus_and_random,
        },
        Criterion {
            id: 2,
            title: "product order, three-way agreement",
            config: cfg(Suite::PiOrder, |_| {}),
            budget: secs(60),
            extra: corpus_and_random,
        },
        Criterion {
            id: 3,
            title: "join-primeness and lattice order",
            config: cfg(Suite::JoinPrime, |_| {}),
            budget: secs(120),
            extra: |r| at_least(88)(r),
        },
        Criterion {
            id: 4,
            title: "initial segments vs product terms",
            config: cfg(Suite::IsPiIso, |_| {}),
            budget: secs(60),
            extra: is_iso_cases,
        },
        Criterion {
            id: 5,
            title: "chain collapse",
            config: cfg(Suite::ChainLattice, |_| {}),
            budget: secs(30),
            extra: |r| at_least(96)(r),
        },
        Criterion {
            id: 6,
            title: "Rado antichains and bad array",
            config: cfg(Suite::Rado, |c| c.horizon = 12),
            budget: secs(60),
            extra: rado_growth,
        },
        Criterion {
            id: 7,
            title: "E-map properties",
            config: cfg(Suite::Emap, |_| {}),
            budget: secs(120),
            extra: |r| at_least(16)(r),
        },
        Criterion {
            id: 8,
            title: "product generation",
            config: cfg(Suite::ProductGen, |_| {}),
            budget: secs(120),
            extra: |r| at_least(16)(r),
        },
        Criterion {
            id: 9,
            title: "relativization",
            config: cfg(Suite::Relativize, |_| {}),
            budget: secs(60),
            extra: |r| at_least(88)(r),
        },
        Criterion {
            id: 10,
            title: "generation along a cofinal chain",
            config: cfg(Suite::HConstruction, |c| c.max_size = 6),
            budget: secs(120),
            extra: |r| at_least(94)(r),
        },
        Criterion {
            id: 11,
            title: "universal property",
            config: cfg(Suite::HomLaws, |c| c.samples = Some(200)),
            budget: secs(60),
            extra: exhaustive_sources,
        },
        Criterion {
            id: 12,
            title: "binary subbase",
            config: cfg(Suite::BinarySubbase, |_| {}),
            budget: secs(60),
            extra: |r| at_least(88)(r),
        },
        Criterion {
            id: 13,
            title: "interval algebra",
            config: cfg(Suite::IntervalAlgebra, |_| {}),
            budget: secs(10),
            extra: |r| at_least(6)(r),
        },
        Criterion {
            id: 14,
            title: "lexicographic layering",
            config: cfg(Suite::LexLayering, |c| c.samples = Some(50)),
            budget: secs(60),
            extra: |r| at_least(50)(r),
        },
    ]
}

fn main() -> ExitCode {
    let mut failed = 0;
    for c in criteria() {
        let start = Instant::now();
        let outcome = run(&c.config).map_err(|e| e.to_string()).and_then(|r| {
            if let Some(f) = r.first_failure() {
                return Err(format!(
                    "{} failures, first: {}",
                    r.failures,
                    serde_json::to_string(f).unwrap_or_default()
                ));
            }
            (c.extra)(&r).map(|()| r.cases)
        });
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|cases| {
            if elapsed > c.budget {
                Err(format!("{cases} cases but over budget"))
            } else {
                Ok(cases)
            }
        });
        let mode = if c.config.lattice_mode == LatticeMode::Strict { " strict" } else { "" };
        match outcome {
            Ok(cases) => println!(
                "criterion {:>2} PASS  {:<40} {:<16} {cases:>4} cases  {:>8.2?} / {:?}{mode}",
                c.id,
                c.title,
                c.config.suite.name(),
                elapsed,
                c.budget
            ),
            Err(why) => {
                failed += 1;
                println!(
                    "criterion {:>2} FAIL  {:<40} {:<16} {:>8.2?} / {:?}  {why}",
                    c.id,
                    c.title,
                    c.config.suite.name(),
                    elapsed,
                    c.budget
                );
            }
        }
    }
    println!("acceptance: {} of 14 criteria passed", 14 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
