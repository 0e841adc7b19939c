//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::process::Command;
use std::time::Instant;

use ordmon::chain_maps::brute_force_enumerate;
use ordmon::congruence::{presented_size, CongruenceLimits};
use ordmon::normal_forms::{
    check_derivation, enumerate_normal_forms, factorize_ic, normalize_with, one_step_rewrites,
};
use ordmon::presentations::{build_presentation, check_soundness};
use ordmon::verification::{
    all_words, generator_closure, generators_generate, verify_pd_iso, verify_presentation, Verdict,
};
use ordmon::words::{alphabet, evaluate};
use ordmon::{ChainSize, Family, Word};

type Check = Result<String, String>;
type Criterion = (u8, &'static str, Box<dyn FnOnce(&mut Audit) -> Check>);

fn n(k: usize) -> ChainSize {
    ChainSize::new(k).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn factorial(k: usize) -> usize {
    (1..=k).product()
}

/// Derivations replayed by criteria 1, 4 and 5, for criterion 6.
#[derive(Default)]
struct Audit {
    replayed: usize,
    failed: usize,
}

fn presentation_stages(fam: Family, k: usize, audit: &mut Audit) -> Result<usize, String> {
    let p = build_presentation(fam, n(k)).map_err(|e| e.to_string())?;
    ensure(check_soundness(&p).all_sound(), || {
        format!("{fam}_{k}: unsound relation")
    })?;
    ensure(generators_generate(fam, n(k)).unwrap(), || {
        format!("{fam}_{k}: generators do not generate")
    })?;
    let concrete = brute_force_enumerate(fam, n(k)).unwrap().len();
    let forms = enumerate_normal_forms(fam, n(k)).unwrap().len();
    ensure(forms == concrete, || {
        format!("{fam}_{k}: {forms} forms, {concrete} elements")
    })?;
    let report = verify_presentation(fam, n(k)).unwrap();
    audit.replayed += report.derivations_checked;
    if report.failed_stage.as_deref() == Some("derivations") {
        audit.failed += 1;
    }
    ensure(report.verdict == Verdict::Pass, || {
        format!("{fam}_{k}: report {:?}", report.verdict)
    })?;
    Ok(concrete)
}

fn criterion_1(audit: &mut Audit) -> Check {
    let mut sizes = Vec::new();
    for k in 1..=7 {
        let size = presentation_stages(Family::D, k, audit)?;
        ensure(size == factorial(k), || format!("|D_{k}| = {size}"))?;
        sizes.push(size);
    }
    Ok(format!("|D_n| = {sizes:?}"))
}

fn criterion_2() -> Check {
    const CATALAN: [usize; 8] = [1, 2, 5, 14, 42, 132, 429, 1430];
    let sizes: Vec<usize> = (1..=8)
        .map(|k| brute_force_enumerate(Family::C, n(k)).unwrap().len())
        .collect();
    ensure(sizes == CATALAN, || format!("|C_n| = {sizes:?}"))?;
    for k in 1..=6 {
        let p = build_presentation(Family::C, n(k)).unwrap();
        let r = presented_size(&p, CongruenceLimits::default());
        ensure(r.completed_size() == Some(CATALAN[k - 1]), || {
            format!("presented C_{k}: {r:?}")
        })?;
    }
    Ok(format!(
        "|C_n| = {sizes:?}, presented sizes match for n <= 6"
    ))
}

fn criterion_3() -> Check {
    const SCHRODER: [usize; 5] = [2, 6, 22, 90, 394];
    for k in 1..=5 {
        let concrete = brute_force_enumerate(Family::PC, n(k)).unwrap().len();
        let forms = enumerate_normal_forms(Family::PC, n(k)).unwrap();
        let distinct: std::collections::BTreeSet<_> = forms.iter().map(evaluate).collect();
        ensure(concrete == SCHRODER[k - 1], || {
            format!("|PC_{k}| = {concrete}")
        })?;
        ensure(
            forms.len() == concrete && distinct.len() == concrete,
            || {
                format!(
                    "PC_{k}: {} forms, {} distinct values",
                    forms.len(),
                    distinct.len()
                )
            },
        )?;
    }
    Ok(format!("|PC_n| = {SCHRODER:?}"))
}

fn criterion_4(audit: &mut Audit) -> Check {
    let mut summary = Vec::new();
    for fam in [Family::ID, Family::IC] {
        let mut sizes = Vec::new();
        for k in 1..=5 {
            let size = presentation_stages(fam, k, audit)?;
            if fam == Family::ID {
                let closure = generator_closure(fam, n(k)).unwrap().len();
                ensure(closure == size, || {
                    format!("ID_{k}: closure {closure}, size {size}")
                })?;
            }
            sizes.push(size);
        }
        if fam == Family::IC {
            ensure(sizes[2] == 14, || format!("|IC_3| = {}", sizes[2]))?;
        }
        summary.push(format!("|{fam}_n| = {sizes:?}"));
    }
    Ok(summary.join(", "))
}

fn criterion_5(audit: &mut Audit) -> Check {
    let mut words = 0;
    let mut rewrites = 0;
    for fam in [Family::D, Family::ID, Family::IC] {
        for k in 1..=4 {
            let p = build_presentation(fam, n(k)).unwrap();
            for letters in all_words(&alphabet(fam, n(k)), 4) {
                let w = Word::new(fam, n(k), letters).unwrap();
                let (nf, d) = normalize_with(&p, &w).map_err(|e| format!("{w}: {e}"))?;
                audit.replayed += 1;
                if !check_derivation(&d, &p) {
                    audit.failed += 1;
                }
                ensure(evaluate(&nf) == evaluate(&w), || {
                    format!("{fam}_{k}: {w} -> {nf} changes value")
                })?;
                let (again, _) = normalize_with(&p, &nf).unwrap();
                ensure(again == nf, || format!("{fam}_{k}: {nf} is not a fixpoint"))?;
                for (step, v) in one_step_rewrites(&p, &w) {
                    let (nv, dv) = normalize_with(&p, &v).map_err(|e| format!("{v}: {e}"))?;
                    audit.replayed += 1;
                    if !check_derivation(&dv, &p) {
                        audit.failed += 1;
                    }
                    ensure(nv == nf, || {
                        format!("{fam}_{k}: {w} -> {nf} but {} gives {nv}", step.relation_id)
                    })?;
                    rewrites += 1;
                }
                words += 1;
            }
        }
    }
    Ok(format!("{words} words, {rewrites} one-step rewrites"))
}

fn criterion_6(audit: &Audit) -> Check {
    ensure(audit.failed == 0 && audit.replayed > 0, || {
        format!(
            "{} of {} derivations failed to replay",
            audit.failed, audit.replayed
        )
    })?;
    Ok(format!("{} derivations replayed", audit.replayed))
}

fn criterion_7() -> Check {
    let mut pairs = 0;
    for k in 1..=5 {
        let r = verify_pd_iso(n(k)).map_err(|e| e.to_string())?;
        ensure(r.all_true(), || format!("PD_{k}: {r:?}"))?;
        ensure(r.pd_size == factorial(k + 1), || {
            format!("|PD_{k}| = {}", r.pd_size)
        })?;
        ensure(r.pairs_checked == r.pd_size * r.pd_size, || {
            format!("PD_{k}: only {} pairs", r.pairs_checked)
        })?;
        pairs += r.pairs_checked;
    }
    Ok(format!("{pairs} composition pairs"))
}

fn criterion_8() -> Check {
    let mut total = 0;
    for k in 1..=5 {
        for alpha in brute_force_enumerate(Family::IC, n(k)).unwrap() {
            let w = factorize_ic(&alpha).map_err(|e| format!("{alpha}: {e}"))?;
            ensure(evaluate(&w) == alpha, || format!("{alpha} -> {w}"))?;
            total += 1;
        }
    }
    Ok(format!("{total} elements round-trip"))
}

fn criterion_9() -> Check {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_ordmon"))
            .args(["verify", "--family", "all", "--n", "4", "--format", "json"])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    ensure(a.status.success() && b.status.success(), || {
        format!("exit {:?} / {:?}", a.status, b.status)
    })?;
    ensure(a.stdout == b.stdout, || "outputs differ".into())?;
    Ok(format!("{} identical bytes", a.stdout.len()))
}

fn main() {
    let mut audit = Audit::default();
    let criteria: Vec<Criterion> = vec![
        (1, "D presentation, n = 1..7", Box::new(criterion_1)),
        (
            2,
            "Catalan counts and presented C_n",
            Box::new(|_| criterion_2()),
        ),
        (
            3,
            "Schroder counts and PC normal forms",
            Box::new(|_| criterion_3()),
        ),
        (
            4,
            "ID and IC presentations, n = 1..5",
            Box::new(criterion_4),
        ),
        (
            5,
            "normalizer soundness and path independence",
            Box::new(criterion_5),
        ),
        (
            6,
            "derivation audit",
            Box::new(|a: &mut Audit| criterion_6(a)),
        ),
        (7, "PD_n isomorphic to D_{n+1}", Box::new(|_| criterion_7())),
        (
            8,
            "IC factorization round-trip",
            Box::new(|_| criterion_8()),
        ),
        (
            9,
            "deterministic verify output",
            Box::new(|_| criterion_9()),
        ),
    ];
    let mut failed = 0;
    for (id, name, check) in criteria {
        let start = Instant::now();
        let outcome = check(&mut audit);
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {id}: {name} ({detail}) [{secs:.2}s]"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {id}: {name}: {why} [{secs:.2}s]");
            }
        }
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
