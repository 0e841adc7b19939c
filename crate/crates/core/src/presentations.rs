//! The five monoid presentations, instantiated for a concrete chain size.
//!
//! Each relation carries an id of the form `<family>.<schema>[<indices>]`,
//! for example `D.3[1,2,3]` or `ID.d1[1,2]`. The bracketed indices are the
//! schema variables in the order listed next to each schema below. Chained
//! equalities `x = y = z` are split into `x = z` and `y = z` with suffixes
//! `1`/`2` (ID) or `a`/`b` (IC).

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::chain_maps::{ChainSize, Family};
use crate::error::{invalid, Error, Result};
use crate::normal_forms;
use crate::words::{
    alphabet, evaluate, format_letters, parse_letters, GeneratorSymbol, LetterKind, Word,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub id: String,
    /// Schema id without indices, e.g. `ID.g`.
    pub schema: String,
    pub lhs: Word,
    pub rhs: Word,
}

#[derive(Debug, Clone)]
pub struct Presentation {
    family: Family,
    n: ChainSize,
    alphabet: Vec<GeneratorSymbol>,
    relations: Vec<Relation>,
    by_id: HashMap<String, usize>,
}

impl Presentation {
    fn from_parts(family: Family, n: ChainSize, relations: Vec<Relation>) -> Result<Self> {
        let mut by_id = HashMap::with_capacity(relations.len());
        for (k, r) in relations.iter().enumerate() {
            if by_id.insert(r.id.clone(), k).is_some() {
                return Err(invalid(format!("duplicate relation id {}", r.id)));
            }
        }
        Ok(Presentation {
            family,
            n,
            alphabet: alphabet(family, n),
            relations,
            by_id,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> ChainSize {
        self.n
    }

    pub fn alphabet(&self) -> &[GeneratorSymbol] {
        &self.alphabet
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn relation(&self, id: &str) -> Option<&Relation> {
        self.by_id.get(id).map(|&k| &self.relations[k])
    }

    /// One relation per line: `<id>: <lhs> = <rhs>`.
    pub fn to_export(&self) -> String {
        let mut out = String::new();
        for r in &self.relations {
            let _ = writeln!(out, "{}: {} = {}", r.id, r.lhs, r.rhs);
        }
        out
    }

    /// Reads the export format back. Blank lines and `#` comments are skipped.
    pub fn parse_export(text: &str, family: Family, n: ChainSize) -> Result<Self> {
        let mut relations = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |what: &str| invalid(format!("line {}: {what}", lineno + 1));
            let (id, body) = line.split_once(':').ok_or_else(|| bad("missing ':'"))?;
            let (lhs, rhs) = body.split_once('=').ok_or_else(|| bad("missing '='"))?;
            let id = id.trim().to_owned();
            if id.is_empty() {
                return Err(bad("empty relation id"));
            }
            let schema = id.split('[').next().unwrap_or(&id).to_owned();
            relations.push(Relation {
                lhs: Word::new(family, n, parse_letters(lhs)?)?,
                rhs: Word::new(family, n, parse_letters(rhs)?)?,
                id,
                schema,
            });
        }
        Presentation::from_parts(family, n, relations)
    }
}

struct Builder {
    family: Family,
    n: ChainSize,
    relations: Vec<Relation>,
}

impl Builder {
    fn push(
        &mut self,
        schema: &str,
        indices: &[usize],
        lhs: Vec<GeneratorSymbol>,
        rhs: Vec<GeneratorSymbol>,
    ) {
        let idx = indices
            .iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(",");
        let schema = format!("{}.{schema}", self.family);
        self.relations.push(Relation {
            id: format!("{schema}[{idx}]"),
            schema,
            lhs: Word::new(self.family, self.n, lhs).expect("schema letters are in range"),
            rhs: Word::new(self.family, self.n, rhs).expect("schema letters are in range"),
        });
    }
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (1..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
        .collect()
}

fn triples(n: usize) -> Vec<(usize, usize, usize)> {
    (1..=n)
        .flat_map(|i| (i + 1..=n).flat_map(move |j| (j + 1..=n).map(move |k| (i, j, k))))
        .collect()
}

fn disjoint(p: (usize, usize), q: (usize, usize)) -> bool {
    p.0 != q.0 && p.0 != q.1 && p.1 != q.0 && p.1 != q.1
}

const fn e(i: usize) -> GeneratorSymbol {
    GeneratorSymbol::single(LetterKind::E, i)
}
const fn f(i: usize) -> GeneratorSymbol {
    GeneratorSymbol::single(LetterKind::F, i)
}
const fn a(i: usize) -> GeneratorSymbol {
    GeneratorSymbol::single(LetterKind::A, i)
}
const fn e2(i: usize, j: usize) -> GeneratorSymbol {
    GeneratorSymbol::pair(LetterKind::E, i, j)
}
const fn a2(i: usize, j: usize) -> GeneratorSymbol {
    GeneratorSymbol::pair(LetterKind::A, i, j)
}

pub fn build_presentation(fam: Family, n: ChainSize) -> Result<Presentation> {
    let mut b = Builder {
        family: fam,
        n,
        relations: Vec::new(),
    };
    let m = n.get();
    match fam {
        Family::PD => {
            return Err(Error::UnsupportedFamily {
                family: fam,
                operation: "build_presentation",
                hint: Some(
                    "PD_n is isomorphic to D_{n+1}; use adjoin_bottom with the D presentation",
                ),
            })
        }
        Family::D => build_d(&mut b, m),
        Family::ID => build_id(&mut b, m),
        Family::C => build_c(&mut b, m),
        Family::IC => build_ic(&mut b, m),
        Family::PC => build_pc(&mut b, m),
    }
    Presentation::from_parts(fam, n, b.relations)
}

fn build_d(b: &mut Builder, n: usize) {
    let ps = pairs(n);
    // D.1[i,j]: e_{ij} e_{ij} = e_{ij}
    for &(i, j) in &ps {
        b.push("1", &[i, j], vec![e2(i, j), e2(i, j)], vec![e2(i, j)]);
    }
    // D.2[i,j,k,l]: e_{ij} e_{kl} = e_{kl} e_{ij}, disjoint, (i,j) < (k,l)
    for (x, &p) in ps.iter().enumerate() {
        for &q in &ps[x + 1..] {
            if disjoint(p, q) {
                b.push(
                    "2",
                    &[p.0, p.1, q.0, q.1],
                    vec![e2(p.0, p.1), e2(q.0, q.1)],
                    vec![e2(q.0, q.1), e2(p.0, p.1)],
                );
            }
        }
    }
    // D.3[i,j,k]: e_{ij} e_{ik} = e_{jk} e_{ij}
    for (i, j, k) in triples(n) {
        b.push(
            "3",
            &[i, j, k],
            vec![e2(i, j), e2(i, k)],
            vec![e2(j, k), e2(i, j)],
        );
    }
    // D.4[i,j,k]: e_{ik} e_{ij} = e_{jk} e_{ij}
    for (i, j, k) in triples(n) {
        b.push(
            "4",
            &[i, j, k],
            vec![e2(i, k), e2(i, j)],
            vec![e2(j, k), e2(i, j)],
        );
    }
    // D.5[i,j,k]: e_{ik} e_{jk} = e_{ik}, i != j (i = j is D.1)
    for k in 1..=n {
        for i in 1..k {
            for j in (1..k).filter(|&j| j != i) {
                b.push("5", &[i, j, k], vec![e2(i, k), e2(j, k)], vec![e2(i, k)]);
            }
        }
    }
}

fn build_id(b: &mut Builder, n: usize) {
    let ps = pairs(n);
    for i in 1..=n {
        b.push("a", &[i], vec![f(i), f(i)], vec![f(i)]);
    }
    for &(i, j) in &ps {
        b.push("b", &[i, j], vec![f(i), f(j)], vec![f(j), f(i)]);
    }
    // ID.c[k,i,j]: f_k a_{ij} = a_{ij} f_k, k not in {i,j}
    for k in 1..=n {
        for &(i, j) in ps.iter().filter(|&&(i, j)| k != i && k != j) {
            b.push("c", &[k, i, j], vec![f(k), a2(i, j)], vec![a2(i, j), f(k)]);
        }
    }
    for &(i, j) in &ps {
        b.push("d1", &[i, j], vec![f(i), a2(i, j)], vec![a2(i, j)]);
    }
    for &(i, j) in &ps {
        b.push("d2", &[i, j], vec![a2(i, j), f(j)], vec![a2(i, j)]);
    }
    for &(i, j) in &ps {
        b.push("e1", &[i, j], vec![f(j), a2(i, j)], vec![f(i), f(j)]);
    }
    for &(i, j) in &ps {
        b.push("e2", &[i, j], vec![a2(i, j), f(i)], vec![f(i), f(j)]);
    }
    for (x, &p) in ps.iter().enumerate() {
        for &q in &ps[x + 1..] {
            if disjoint(p, q) {
                b.push(
                    "f",
                    &[p.0, p.1, q.0, q.1],
                    vec![a2(p.0, p.1), a2(q.0, q.1)],
                    vec![a2(q.0, q.1), a2(p.0, p.1)],
                );
            }
        }
    }
    // ID.g[i,j,k]: a_{jk} a_{ij} = f_j a_{ik}
    for (i, j, k) in triples(n) {
        b.push(
            "g",
            &[i, j, k],
            vec![a2(j, k), a2(i, j)],
            vec![f(j), a2(i, k)],
        );
    }
}

fn build_c(b: &mut Builder, n: usize) {
    let top = n.saturating_sub(1);
    for i in 1..=top {
        b.push("11", &[i], vec![e(i), e(i)], vec![e(i)]);
    }
    for i in 1..=top {
        for j in i + 2..=top {
            b.push("12", &[i, j], vec![e(i), e(j)], vec![e(j), e(i)]);
        }
    }
    for i in 1..top {
        b.push("13", &[i], vec![e(i), e(i + 1), e(i)], vec![e(i + 1), e(i)]);
    }
    for i in 1..top {
        b.push(
            "14",
            &[i],
            vec![e(i + 1), e(i), e(i + 1)],
            vec![e(i + 1), e(i)],
        );
    }
}

fn build_ic(b: &mut Builder, n: usize) {
    let top = n - 1;
    for i in 1..=n {
        b.push("21", &[i], vec![e(i), e(i)], vec![e(i)]);
    }
    for (i, j) in pairs(n) {
        b.push("22", &[i, j], vec![e(i), e(j)], vec![e(j), e(i)]);
    }
    // IC.23[i,j]: e_i a_j = a_j e_i, i < j or i > j + 1
    for i in 1..=n {
        for j in (1..=top).filter(|&j| i < j || i > j + 1) {
            b.push("23", &[i, j], vec![e(i), a(j)], vec![a(j), e(i)]);
        }
    }
    for i in 1..=top {
        for j in i + 2..=top {
            b.push("24", &[i, j], vec![a(i), a(j)], vec![a(j), a(i)]);
        }
    }
    for i in 1..=top {
        b.push("25a", &[i], vec![e(i), a(i)], vec![a(i)]);
    }
    for i in 1..=top {
        b.push("25b", &[i], vec![a(i), e(i + 1)], vec![a(i)]);
    }
    for i in 1..=top {
        b.push("26a", &[i], vec![e(i + 1), a(i)], vec![e(i), e(i + 1)]);
    }
    for i in 1..=top {
        b.push("26b", &[i], vec![a(i), e(i)], vec![e(i), e(i + 1)]);
    }
}

fn build_pc(b: &mut Builder, n: usize) {
    let top = n - 1;
    for i in 1..=top {
        b.push("y1", &[i], vec![e(i), e(i)], vec![e(i)]);
    }
    for i in 1..=top {
        for j in i + 2..=top {
            b.push("y2", &[i, j], vec![e(i), e(j)], vec![e(j), e(i)]);
        }
    }
    for i in 1..top {
        b.push("y3", &[i], vec![e(i), e(i + 1), e(i)], vec![e(i + 1), e(i)]);
    }
    for i in 1..top {
        b.push(
            "y4",
            &[i],
            vec![e(i + 1), e(i), e(i + 1)],
            vec![e(i + 1), e(i)],
        );
    }
    for i in 1..=n {
        b.push("y5", &[i], vec![f(i), f(i)], vec![f(i)]);
    }
    for (i, j) in pairs(n) {
        b.push("y6", &[i, j], vec![f(i), f(j)], vec![f(j), f(i)]);
    }
    // PC.y7[j,i]: f_j e_i = e_i f_j, j < i or j > i + 1
    for j in 1..=n {
        for i in (1..=top).filter(|&i| j < i || j > i + 1) {
            b.push("y7", &[j, i], vec![f(j), e(i)], vec![e(i), f(j)]);
        }
    }
    for i in 1..=top {
        b.push("y8", &[i], vec![f(i + 1), e(i)], vec![f(i + 1)]);
    }
    for i in 1..=top {
        b.push("y9", &[i], vec![e(i), f(i + 1)], vec![e(i)]);
    }
    for i in 1..=top {
        b.push("y10", &[i], vec![e(i), f(i)], vec![f(i), f(i + 1)]);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub id: String,
    pub sound: bool,
    /// First chain point where the two sides evaluate differently.
    pub witness: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SoundnessReport {
    pub family: Family,
    pub n: ChainSize,
    pub checks: Vec<RelationCheck>,
}

impl SoundnessReport {
    pub fn all_sound(&self) -> bool {
        self.checks.iter().all(|c| c.sound)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.checks.iter().filter(|c| !c.sound)
    }
}

/// Compares both sides of every relation under evaluation.
pub fn check_soundness(p: &Presentation) -> SoundnessReport {
    let checks = p
        .relations
        .iter()
        .map(|r| {
            let witness = evaluate(&r.lhs).first_difference(&evaluate(&r.rhs));
            RelationCheck {
                id: r.id.clone(),
                sound: witness.is_none(),
                witness,
            }
        })
        .collect();
    SoundnessReport {
        family: p.family,
        n: p.n,
        checks,
    }
}

/// What happens to an index tuple that a schema's side condition leaves out.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum ExclusionOutcome {
    /// The instance is false in the concrete monoid.
    Unsound { witness: usize },
    /// Both sides normalize to the same word using the included relations.
    Redundant,
    /// Concretely true but no normalizer is available to derive it.
    Unresolved,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExcludedInstance {
    pub schema: String,
    pub lhs: String,
    pub rhs: String,
    #[serde(flatten)]
    pub outcome: ExclusionOutcome,
}

/// Instances of each schema that its side condition excludes.
fn excluded_instances(
    fam: Family,
    n: usize,
) -> Vec<(&'static str, Vec<GeneratorSymbol>, Vec<GeneratorSymbol>)> {
    let mut out = Vec::new();
    let top = n.saturating_sub(1);
    match fam {
        Family::D => {
            let ps = pairs(n);
            for (x, &p) in ps.iter().enumerate() {
                for &q in &ps[x + 1..] {
                    if !disjoint(p, q) {
                        out.push((
                            "D.2",
                            vec![e2(p.0, p.1), e2(q.0, q.1)],
                            vec![e2(q.0, q.1), e2(p.0, p.1)],
                        ));
                    }
                }
            }
            for (i, k) in ps {
                out.push(("D.5", vec![e2(i, k), e2(i, k)], vec![e2(i, k)]));
            }
        }
        Family::ID => {
            for (i, j) in pairs(n) {
                for k in [i, j] {
                    out.push(("ID.c", vec![f(k), a2(i, j)], vec![a2(i, j), f(k)]));
                }
            }
            let ps = pairs(n);
            for (x, &p) in ps.iter().enumerate() {
                for &q in &ps[x + 1..] {
                    if !disjoint(p, q) {
                        out.push((
                            "ID.f",
                            vec![a2(p.0, p.1), a2(q.0, q.1)],
                            vec![a2(q.0, q.1), a2(p.0, p.1)],
                        ));
                    }
                }
            }
        }
        Family::C | Family::PC => {
            let schema = if fam == Family::C { "C.12" } else { "PC.y2" };
            for i in 1..top {
                out.push((schema, vec![e(i), e(i + 1)], vec![e(i + 1), e(i)]));
            }
            if fam == Family::PC {
                for i in 1..=top {
                    for j in [i, i + 1] {
                        out.push(("PC.y7", vec![f(j), e(i)], vec![e(i), f(j)]));
                    }
                }
            }
        }
        Family::IC => {
            for j in 1..=top {
                for i in [j, j + 1] {
                    out.push(("IC.23", vec![e(i), a(j)], vec![a(j), e(i)]));
                }
            }
            for i in 1..top {
                out.push(("IC.24", vec![a(i), a(i + 1)], vec![a(i + 1), a(i)]));
            }
        }
        Family::PD => {}
    }
    out
}

/// Re-derives each schema side condition: every excluded index tuple must be
/// either false concretely or already a consequence of the included
/// relations.
pub fn audit_side_conditions(fam: Family, n: ChainSize) -> Result<Vec<ExcludedInstance>> {
    let mut findings = Vec::new();
    for (schema, lhs, rhs) in excluded_instances(fam, n.get()) {
        let lhs = Word::new(fam, n, lhs)?;
        let rhs = Word::new(fam, n, rhs)?;
        let outcome = match evaluate(&lhs).first_difference(&evaluate(&rhs)) {
            Some(witness) => ExclusionOutcome::Unsound { witness },
            None if normal_forms::has_normalizer(fam) => {
                let (l, _) = normal_forms::normalize(&lhs)?;
                let (r, _) = normal_forms::normalize(&rhs)?;
                if l == r {
                    ExclusionOutcome::Redundant
                } else {
                    ExclusionOutcome::Unresolved
                }
            }
            None => ExclusionOutcome::Unresolved,
        };
        findings.push(ExcludedInstance {
            schema: schema.to_owned(),
            lhs: format_letters(lhs.letters()),
            rhs: format_letters(rhs.letters()),
            outcome,
        });
    }
    Ok(findings)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_word;

    fn n(k: usize) -> ChainSize {
        ChainSize::new(k).unwrap()
    }

    fn count(p: &Presentation, schema: &str) -> usize {
        p.relations().iter().filter(|r| r.schema == schema).count()
    }

    #[test]
    fn d3_instantiation() {
        let p = build_presentation(Family::D, n(3)).unwrap();
        let alpha: Vec<String> = p.alphabet().iter().map(ToString::to_string).collect();
        assert_eq!(alpha, ["e[1,2]", "e[1,3]", "e[2,3]"]);
        assert_eq!(p.relations().len(), 7);
        assert_eq!(count(&p, "D.1"), 3);
        assert_eq!(count(&p, "D.2"), 0);
        assert_eq!(count(&p, "D.3"), 1);
        assert_eq!(count(&p, "D.4"), 1);
        assert_eq!(count(&p, "D.5"), 2);
    }

    #[test]
    fn c4_instantiation() {
        let p = build_presentation(Family::C, n(4)).unwrap();
        assert_eq!(p.alphabet().len(), 3);
        assert_eq!(p.relations().len(), 8);
        assert_eq!(
            [
                count(&p, "C.11"),
                count(&p, "C.12"),
                count(&p, "C.13"),
                count(&p, "C.14")
            ],
            [3, 1, 2, 2]
        );
    }

    #[test]
    fn degenerate_chain() {
        let p = build_presentation(Family::D, n(1)).unwrap();
        assert!(p.alphabet().is_empty());
        assert!(p.relations().is_empty());
    }

    #[test]
    fn pd_is_rejected() {
        assert!(matches!(
            build_presentation(Family::PD, n(3)),
            Err(Error::UnsupportedFamily { .. })
        ));
    }

    #[test]
    fn chained_equalities_are_split() {
        let p = build_presentation(Family::ID, n(3)).unwrap();
        let d1 = p.relation("ID.d1[1,2]").unwrap();
        assert_eq!(
            (d1.lhs.to_string(), d1.rhs.to_string()),
            ("f[1] a[1,2]".into(), "a[1,2]".into())
        );
        let d2 = p.relation("ID.d2[1,2]").unwrap();
        assert_eq!(
            (d2.lhs.to_string(), d2.rhs.to_string()),
            ("a[1,2] f[2]".into(), "a[1,2]".into())
        );
        let g = p.relation("ID.g[1,2,3]").unwrap();
        assert_eq!(
            (g.lhs.to_string(), g.rhs.to_string()),
            ("a[2,3] a[1,2]".into(), "f[2] a[1,3]".into())
        );
    }

    #[test]
    fn soundness_for_all_families() {
        for fam in Family::PRESENTED {
            for k in 1..=6 {
                let report = check_soundness(&build_presentation(fam, n(k)).unwrap());
                assert!(
                    report.all_sound(),
                    "{fam} n={k}: {:?}",
                    report.failures().collect::<Vec<_>>()
                );
            }
        }
    }

    #[test]
    fn mutated_relation_reports_witness() {
        let k = n(3);
        let mutated = Relation {
            id: "D.mut[1]".into(),
            schema: "D.mut".into(),
            lhs: parse_word("e[1,2] e[1,3]", Family::D, k).unwrap(),
            rhs: parse_word("e[1,3]", Family::D, k).unwrap(),
        };
        let p = Presentation::from_parts(Family::D, k, vec![mutated]).unwrap();
        let report = check_soundness(&p);
        assert!(!report.all_sound());
        assert_eq!(report.checks[0].witness, Some(2));
    }

    #[test]
    fn export_round_trip() {
        for fam in Family::PRESENTED {
            let p = build_presentation(fam, n(4)).unwrap();
            let text = p.to_export();
            let back = Presentation::parse_export(&text, fam, n(4)).unwrap();
            assert_eq!(back.relations(), p.relations());
        }
        assert!(Presentation::parse_export("x: e[1] e[1]", Family::C, n(3)).is_err());
        assert!(
            Presentation::parse_export("x: e[1] = e[1]\nx: e[2] = e[2]", Family::C, n(3)).is_err()
        );
    }

    #[test]
    fn excluded_tuples_are_unsound_or_redundant() {
        for fam in Family::PRESENTED {
            for k in 1..=5 {
                for finding in audit_side_conditions(fam, n(k)).unwrap() {
                    assert_ne!(
                        finding.outcome,
                        ExclusionOutcome::Unresolved,
                        "{fam} n={k}: {finding:?}"
                    );
                }
            }
        }
        // Overlapping D.2 pairs sharing the smaller index commute concretely.
        let d = audit_side_conditions(Family::D, n(3)).unwrap();
        assert!(d
            .iter()
            .any(|x| x.lhs == "e[1,2] e[1,3]" && x.outcome == ExclusionOutcome::Redundant));
        assert!(d
            .iter()
            .any(|x| matches!(x.outcome, ExclusionOutcome::Unsound { .. })));
    }
}
