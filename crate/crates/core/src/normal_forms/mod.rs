//! Canonical words for D, ID, IC and PC, and rewriting procedures that reach
//! them while logging every relation application.
//!
//! A [`Derivation`] is a chain of single-relation rewrites. Normalizers never
//! edit a word directly: all changes go through [`Rewriter::apply`], which
//! looks the relation up in the presentation and records the step, so every
//! emitted derivation can be replayed by [`check_derivation`].

mod d;
mod ic;
mod id;
mod pc;

use serde::{Deserialize, Serialize};

use crate::chain_maps::{in_family, ChainSize, Family, PartialMap};
use crate::error::{invalid, Error, Result};
use crate::presentations::{build_presentation, Presentation};
use crate::words::{parse_word, GeneratorSymbol, LetterKind, Word};

pub use ic::factorize_ic;

/// `e_{i_1,j_1} ... e_{i_k,j_k}` with `j` strictly increasing and `i_s < j_s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DNormalForm {
    /// `(i_s, j_s)`.
    pub pairs: Vec<(usize, usize)>,
}

/// `f_{i_1} ... f_{i_k} a_{t_1,j_1} ... a_{t_r,j_r}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IDNormalForm {
    pub f_indices: Vec<usize>,
    /// `(t_s, j_s)`: strictly increasing `j`, pairwise distinct `t`.
    pub a_pairs: Vec<(usize, usize)>,
}

/// `e_{i_1} ... e_{i_k}` followed by descending runs `a_j a_{j-1} ... a_t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ICNormalForm {
    pub e_indices: Vec<usize>,
    /// `(j_s, t_s)`.
    pub runs: Vec<(usize, usize)>,
}

/// `f_{p_1} ... f_{p_r}` followed by descending runs `e_j e_{j-1} ... e_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PCNormalForm {
    pub f_indices: Vec<usize>,
    /// `(j_s, i_s)`.
    pub runs: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "family")]
pub enum NormalForm {
    D(DNormalForm),
    ID(IDNormalForm),
    IC(ICNormalForm),
    PC(PCNormalForm),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    /// Replace the left-hand side by the right-hand side.
    LR,
    RL,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RewriteStep {
    #[serde(rename = "rel")]
    pub relation_id: String,
    #[serde(rename = "pos")]
    pub position: usize,
    #[serde(rename = "dir")]
    pub direction: Direction,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub start: Word,
    pub steps: Vec<RewriteStep>,
    pub end: Word,
}

#[derive(Serialize, Deserialize)]
struct DerivationJson {
    start: String,
    steps: Vec<RewriteStep>,
    end: String,
}

impl Serialize for Derivation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        DerivationJson {
            start: self.start.to_string(),
            steps: self.steps.clone(),
            end: self.end.to_string(),
        }
        .serialize(s)
    }
}

impl Derivation {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("derivations serialize")
    }

    /// Reads the JSON form; words are parsed for the given monoid.
    pub fn from_json(text: &str, family: Family, n: ChainSize) -> Result<Self> {
        let raw: DerivationJson =
            serde_json::from_str(text).map_err(|e| invalid(format!("bad derivation JSON: {e}")))?;
        Ok(Derivation {
            start: parse_word(&raw.start, family, n)?,
            steps: raw.steps,
            end: parse_word(&raw.end, family, n)?,
        })
    }
}

/// Applies one step to a letter sequence, or explains why it does not apply.
fn replay_step(
    p: &Presentation,
    word: &mut Vec<GeneratorSymbol>,
    step: &RewriteStep,
) -> std::result::Result<(), String> {
    let rel = p
        .relation(&step.relation_id)
        .ok_or_else(|| format!("unknown relation {}", step.relation_id))?;
    let (from, to) = match step.direction {
        Direction::LR => (rel.lhs.letters(), rel.rhs.letters()),
        Direction::RL => (rel.rhs.letters(), rel.lhs.letters()),
    };
    let end = step.position + from.len();
    if end > word.len() || word[step.position..end] != *from {
        return Err(format!(
            "{} ({:?}) does not match at position {}",
            step.relation_id, step.direction, step.position
        ));
    }
    word.splice(step.position..end, to.iter().copied());
    Ok(())
}

/// Replays `d` against `p` and checks that it ends at `d.end`.
pub fn check_derivation(d: &Derivation, p: &Presentation) -> bool {
    let same_monoid = |w: &Word| w.family() == p.family() && w.n() == p.n();
    if !same_monoid(&d.start) || !same_monoid(&d.end) {
        return false;
    }
    let mut word = d.start.letters().to_vec();
    for step in &d.steps {
        if replay_step(p, &mut word, step).is_err() {
            return false;
        }
    }
    word == d.end.letters()
}

/// Every word reachable from `w` by one application of a relation of `p`, in
/// either direction, at any position where its source side occurs.
pub fn one_step_rewrites(p: &Presentation, w: &Word) -> Vec<(RewriteStep, Word)> {
    let letters = w.letters();
    let mut out = Vec::new();
    for rel in p.relations() {
        for (dir, from, to) in [
            (Direction::LR, rel.lhs.letters(), rel.rhs.letters()),
            (Direction::RL, rel.rhs.letters(), rel.lhs.letters()),
        ] {
            if from.is_empty() || from.len() > letters.len() {
                continue;
            }
            for pos in 0..=letters.len() - from.len() {
                if letters[pos..pos + from.len()] == *from {
                    let mut next = letters.to_vec();
                    next.splice(pos..pos + from.len(), to.iter().copied());
                    let step = RewriteStep {
                        relation_id: rel.id.clone(),
                        position: pos,
                        direction: dir,
                    };
                    out.push((step, Word::from_valid(w.family(), w.n(), next)));
                }
            }
        }
    }
    out
}

/// Mutable word plus the log of relation applications that produced it.
pub(crate) struct Rewriter<'p> {
    pres: &'p Presentation,
    pub(crate) word: Vec<GeneratorSymbol>,
    steps: Vec<RewriteStep>,
    cap: usize,
}

impl<'p> Rewriter<'p> {
    pub(crate) fn new(pres: &'p Presentation, word: Vec<GeneratorSymbol>, cap: usize) -> Self {
        Rewriter {
            pres,
            word,
            steps: Vec::new(),
            cap,
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.word.len()
    }

    /// Applies relation `<family>.<schema>[<indices>]` at `pos`.
    pub(crate) fn apply(
        &mut self,
        schema: &str,
        indices: &[usize],
        pos: usize,
        dir: Direction,
    ) -> Result<()> {
        if self.steps.len() >= self.cap {
            return Err(Error::TerminationGuard { cap: self.cap });
        }
        let idx = indices
            .iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(",");
        let step = RewriteStep {
            relation_id: format!("{}.{schema}[{idx}]", self.pres.family()),
            position: pos,
            direction: dir,
        };
        replay_step(self.pres, &mut self.word, &step).map_err(Error::Rewrite)?;
        self.steps.push(step);
        Ok(())
    }

    fn finish(self, start: &Word) -> (Word, Derivation) {
        let end = Word::from_valid(start.family(), start.n(), self.word);
        let derivation = Derivation {
            start: start.clone(),
            steps: self.steps,
            end: end.clone(),
        };
        (end, derivation)
    }
}

/// Termination guard for the normalizers.
fn step_cap(len: usize) -> usize {
    10 * len * len + 64
}

pub fn has_normalizer(fam: Family) -> bool {
    matches!(fam, Family::D | Family::ID | Family::IC)
}

fn unsupported(fam: Family, operation: &'static str) -> Error {
    Error::UnsupportedFamily {
        family: fam,
        operation,
        hint: match fam {
            Family::C => Some("C_n has no normal form here; use the congruence engine"),
            Family::PD => Some("PD_n is handled through adjoin_bottom and D_{n+1}"),
            Family::PC => Some("PC_n has a recognizer and enumerator but no rewriting procedure"),
            _ => None,
        },
    }
}

/// Rewrites `w` to its normal form, returning the derivation.
pub fn normalize(w: &Word) -> Result<(Word, Derivation)> {
    if !has_normalizer(w.family()) {
        return Err(unsupported(w.family(), "normalize"));
    }
    let p = build_presentation(w.family(), w.n())?;
    normalize_with(&p, w)
}

/// As [`normalize`], reusing an already built presentation for `w`'s monoid.
pub fn normalize_with(p: &Presentation, w: &Word) -> Result<(Word, Derivation)> {
    if (p.family(), p.n()) != (w.family(), w.n()) {
        return Err(invalid("presentation and word belong to different monoids"));
    }
    let mut rw = Rewriter::new(p, w.letters().to_vec(), step_cap(w.len()));
    match w.family() {
        Family::D => d::normalize(&mut rw)?,
        Family::ID => id::normalize(&mut rw)?,
        Family::IC => ic::normalize(&mut rw)?,
        fam => return Err(unsupported(fam, "normalize")),
    }
    Ok(rw.finish(w))
}

/// Structured normal form of `w`, or `None` if `w` is not in normal form.
pub fn recognize(w: &Word) -> Result<Option<NormalForm>> {
    let letters = w.letters();
    Ok(match w.family() {
        Family::D => d::recognize(letters).map(NormalForm::D),
        Family::ID => id::recognize(letters).map(NormalForm::ID),
        Family::IC => ic::recognize(letters).map(NormalForm::IC),
        Family::PC => pc::recognize(letters).map(NormalForm::PC),
        fam => return Err(unsupported(fam, "recognize")),
    })
}

/// All normal-form words, in shortlex order.
pub fn enumerate_normal_forms(fam: Family, n: ChainSize) -> Result<Vec<Word>> {
    let mut words: Vec<Vec<GeneratorSymbol>> = match fam {
        Family::D => d::enumerate(n.get()),
        Family::ID => id::enumerate(n.get()),
        Family::IC => ic::enumerate(n.get()),
        Family::PC => pc::enumerate(n.get()),
        fam => return Err(unsupported(fam, "enumerate_normal_forms")),
    };
    words.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    Ok(words
        .into_iter()
        .map(|l| Word::from_valid(fam, n, l))
        .collect())
}

/// Sorted list of subsets of `pool` (each subset ascending).
pub(crate) fn subsets(pool: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &x in pool {
        let with: Vec<Vec<usize>> = out
            .iter()
            .map(|s| {
                let mut s = s.clone();
                s.push(x);
                s
            })
            .collect();
        out.extend(with);
    }
    out
}

/// Sequences of runs `(top, bottom)` with `bottom <= top <= max_top` and both
/// coordinates strictly increasing along the sequence.
pub(crate) fn run_sequences(max_top: usize) -> Vec<Vec<(usize, usize)>> {
    fn extend(cur: &mut Vec<(usize, usize)>, max_top: usize, out: &mut Vec<Vec<(usize, usize)>>) {
        let (last_top, last_bottom) = cur.last().copied().unwrap_or((0, 0));
        for top in last_top + 1..=max_top {
            for bottom in last_bottom + 1..=top {
                cur.push((top, bottom));
                out.push(cur.clone());
                extend(cur, max_top, out);
                cur.pop();
            }
        }
    }
    let mut out = vec![Vec::new()];
    extend(&mut Vec::new(), max_top, &mut out);
    out
}

/// Splits single-index letters of one kind into maximal descending runs
/// `(top, bottom)`.
pub(crate) fn split_runs(indices: &[usize]) -> Vec<(usize, usize)> {
    let mut runs: Vec<(usize, usize)> = Vec::new();
    for &x in indices {
        match runs.last_mut() {
            Some(run) if run.1 == x + 1 => run.1 = x,
            _ => runs.push((x, x)),
        }
    }
    runs
}

/// Letters of the given kind, descending from `top` to `bottom`.
pub(crate) fn run_letters(
    kind: LetterKind,
    top: usize,
    bottom: usize,
) -> impl Iterator<Item = GeneratorSymbol> {
    (bottom..=top)
        .rev()
        .map(move |x| GeneratorSymbol::single(kind, x))
}

pub(crate) fn strictly_increasing(xs: impl IntoIterator<Item = usize>) -> bool {
    let mut prev = None;
    for x in xs {
        if prev.is_some_and(|p| p >= x) {
            return false;
        }
        prev = Some(x);
    }
    true
}

pub(crate) fn check_member(map: &PartialMap, fam: Family) -> Result<()> {
    if in_family(map, fam) {
        Ok(())
    } else {
        Err(invalid(format!(
            "{map} is not a member of {fam}_{}",
            map.n()
        )))
    }
}
