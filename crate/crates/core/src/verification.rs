//! End-to-end checks that a presentation defines its concrete monoid: the
//! relations hold, the generators generate, and the number of normal forms
//! (or the presented size) matches the concrete size.

use std::collections::{BTreeSet, HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chain_maps::{
    adjoin_bottom, brute_force_enumerate, generator, identity, ChainSize, Family, PartialMap,
};
use crate::congruence::{presented_size, CongruenceLimits, Status};
use crate::error::{Error, Result};
use crate::normal_forms::{
    check_derivation, enumerate_normal_forms, has_normalizer, normalize_with, recognize,
};
use crate::presentations::{build_presentation, check_soundness, Presentation};
use crate::words::{alphabet, evaluate, GeneratorSymbol, Word};

/// Exhaustive word sample: all words up to this length, for `n` up to
/// [`EXHAUSTIVE_MAX_N`].
pub const EXHAUSTIVE_MAX_LEN: usize = 4;
pub const EXHAUSTIVE_MAX_N: usize = 4;
/// Random word sample: this many words of length up to
/// [`RANDOM_MAX_LEN`], for `n` up to [`RANDOM_MAX_N`].
pub const RANDOM_WORDS: usize = 10_000;
pub const RANDOM_MAX_LEN: usize = 12;
pub const RANDOM_MAX_N: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Incomplete,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub family: Family,
    pub n: ChainSize,
    pub relations_sound: bool,
    pub generators_generate: bool,
    pub concrete_size: usize,
    pub normal_form_count: Option<usize>,
    pub presented_size: Option<usize>,
    pub derivations_checked: usize,
    pub verdict: Verdict,
    /// The stage that failed or could not finish, if any.
    pub failed_stage: Option<String>,
}

/// Breadth-first product closure of the generators, seeded with the identity.
/// The result is sorted.
pub fn generator_closure(fam: Family, n: ChainSize) -> Result<Vec<PartialMap>> {
    let letters = alphabet(fam, n);
    if letters.is_empty() && fam == Family::PD {
        return Err(Error::UnsupportedFamily {
            family: fam,
            operation: "generator_closure",
            hint: Some("PD_n is handled through adjoin_bottom and D_{n+1}"),
        });
    }
    let gens = letters
        .iter()
        .map(|&s| generator(fam, s, n))
        .collect::<Result<Vec<_>>>()?;
    let start = identity(n);
    let mut seen: HashSet<PartialMap> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = x.compose(g)?;
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<PartialMap> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Whether the generator closure is exactly the concrete monoid.
pub fn generators_generate(fam: Family, n: ChainSize) -> Result<bool> {
    Ok(generator_closure(fam, n)? == brute_force_enumerate(fam, n)?)
}

/// Words used to validate a normalizer: every word of length at most
/// [`EXHAUSTIVE_MAX_LEN`] when `n` is small enough, then a seeded random
/// sample.
pub fn sample_words(fam: Family, n: ChainSize) -> Vec<Word> {
    let letters = alphabet(fam, n);
    let mut out = Vec::new();
    if n.get() <= EXHAUSTIVE_MAX_N {
        out.extend(
            all_words(&letters, EXHAUSTIVE_MAX_LEN)
                .into_iter()
                .map(|l| Word::new(fam, n, l).expect("alphabet letters are valid")),
        );
    }
    if n.get() <= RANDOM_MAX_N && !letters.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(sample_seed(fam, n));
        for _ in 0..RANDOM_WORDS {
            let len = rng.gen_range(0..=RANDOM_MAX_LEN);
            let l = (0..len)
                .map(|_| letters[rng.gen_range(0..letters.len())])
                .collect();
            out.push(Word::new(fam, n, l).expect("alphabet letters are valid"));
        }
    }
    out
}

fn sample_seed(fam: Family, n: ChainSize) -> u64 {
    let f = Family::ALL.iter().position(|&x| x == fam).unwrap_or(0) as u64;
    0x6f72_646d_6f6e_0000 ^ (f << 8) ^ n.get() as u64
}

/// All words over `letters` of length at most `max_len`, shortest first.
pub fn all_words(letters: &[GeneratorSymbol], max_len: usize) -> Vec<Vec<GeneratorSymbol>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * letters.len());
        for w in &layer {
            for &s in letters {
                let mut v: Vec<GeneratorSymbol> = w.clone();
                v.push(s);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

enum Stage {
    Failed(&'static str),
    Incomplete(&'static str),
}

/// Runs the normalizer on the word sample. Returns the number of derivations
/// that were replayed successfully.
fn check_normalizer(p: &Presentation) -> std::result::Result<usize, Stage> {
    let mut checked = 0;
    for w in sample_words(p.family(), p.n()) {
        let (nf, d) = match normalize_with(p, &w) {
            Ok(r) => r,
            Err(Error::TerminationGuard { .. }) => return Err(Stage::Incomplete("normalization")),
            Err(_) => return Err(Stage::Failed("normalization")),
        };
        if !check_derivation(&d, p) {
            return Err(Stage::Failed("derivations"));
        }
        if evaluate(&nf) != evaluate(&w) || !matches!(recognize(&nf), Ok(Some(_))) {
            return Err(Stage::Failed("normalization"));
        }
        checked += 1;
    }
    Ok(checked)
}

/// Normal-form count, after checking that the forms evaluate to pairwise
/// distinct members of the family.
fn count_normal_forms(fam: Family, n: ChainSize) -> Result<Option<usize>> {
    if fam == Family::C {
        return Ok(None);
    }
    let forms = enumerate_normal_forms(fam, n)?;
    let images: BTreeSet<PartialMap> = forms.iter().map(evaluate).collect();
    if images.len() != forms.len() {
        return Err(Error::Validation(format!(
            "{} normal forms of {fam}_{n} evaluate to only {} elements",
            forms.len(),
            images.len()
        )));
    }
    Ok(Some(forms.len()))
}

/// Runs every stage of the argument for one presentation.
pub fn verify_presentation(fam: Family, n: ChainSize) -> Result<VerificationReport> {
    verify_presentation_with(fam, n, CongruenceLimits::default())
}

pub fn verify_presentation_with(
    fam: Family,
    n: ChainSize,
    limits: CongruenceLimits,
) -> Result<VerificationReport> {
    let p = build_presentation(fam, n)?;
    let mut report = VerificationReport {
        family: fam,
        n,
        relations_sound: false,
        generators_generate: false,
        concrete_size: 0,
        normal_form_count: None,
        presented_size: None,
        derivations_checked: 0,
        verdict: Verdict::Incomplete,
        failed_stage: None,
    };
    let stop = |mut r: VerificationReport, stage: Stage| {
        let (verdict, name) = match stage {
            Stage::Failed(s) => (Verdict::Fail, s),
            Stage::Incomplete(s) => (Verdict::Incomplete, s),
        };
        r.verdict = verdict;
        r.failed_stage = Some(name.to_string());
        Ok(r)
    };

    report.concrete_size = match brute_force_enumerate(fam, n) {
        Ok(all) => all.len(),
        Err(Error::Resource(_)) => return stop(report, Stage::Incomplete("brute-force")),
        Err(e) => return Err(e),
    };
    report.relations_sound = check_soundness(&p).all_sound();
    if !report.relations_sound {
        return stop(report, Stage::Failed("soundness"));
    }
    report.generators_generate = generators_generate(fam, n)?;
    if !report.generators_generate {
        return stop(report, Stage::Failed("generation"));
    }
    report.normal_form_count = match count_normal_forms(fam, n) {
        Ok(c) => c,
        Err(Error::Validation(_)) => return stop(report, Stage::Failed("normal-forms")),
        Err(e) => return Err(e),
    };
    let congruence = presented_size(&p, limits);
    report.presented_size = congruence.completed_size();
    if fam == Family::C && congruence.status == Status::Exhausted {
        return stop(report, Stage::Incomplete("congruence"));
    }
    if has_normalizer(fam) {
        match check_normalizer(&p) {
            Ok(k) => report.derivations_checked = k,
            Err(stage) => return stop(report, stage),
        }
    }

    let size = report.concrete_size;
    if report.normal_form_count.is_some_and(|c| c != size) {
        return stop(report, Stage::Failed("normal-forms"));
    }
    if report.presented_size.is_some_and(|c| c != size) {
        return stop(report, Stage::Failed("congruence"));
    }
    let counted = report.normal_form_count == Some(size) || report.presented_size == Some(size);
    if !counted {
        return stop(report, Stage::Incomplete("counting"));
    }
    report.verdict = Verdict::Pass;
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PdIsoReport {
    pub n: ChainSize,
    pub pd_size: usize,
    pub d_size: usize,
    pub size_match: bool,
    pub bijective: bool,
    pub homomorphic: bool,
    pub pairs_checked: usize,
}

impl PdIsoReport {
    pub fn all_true(&self) -> bool {
        self.size_match && self.bijective && self.homomorphic
    }
}

/// Checks that [`adjoin_bottom`] is an isomorphism `PD_n -> D_{n+1}`, on every
/// element and every composition pair.
pub fn verify_pd_iso(n: ChainSize) -> Result<PdIsoReport> {
    let pd = brute_force_enumerate(Family::PD, n)?;
    let d = brute_force_enumerate(Family::D, n.succ()?)?;
    let images = pd.iter().map(adjoin_bottom).collect::<Result<Vec<_>>>()?;
    let mut sorted = images.clone();
    sorted.sort();
    let bijective = sorted == d;
    let mut homomorphic = true;
    let mut pairs_checked = 0;
    for (x, fx) in pd.iter().zip(&images) {
        for (y, fy) in pd.iter().zip(&images) {
            pairs_checked += 1;
            if adjoin_bottom(&x.compose(y)?)? != fx.compose(fy)? {
                homomorphic = false;
            }
        }
    }
    Ok(PdIsoReport {
        n,
        pd_size: pd.len(),
        d_size: d.len(),
        size_match: pd.len() == d.len(),
        bijective,
        homomorphic,
        pairs_checked,
    })
}
