//! Normal forms for the partial order-preserving order-decreasing maps.
//! Recognition and enumeration only.

use super::{run_letters, run_sequences, split_runs, strictly_increasing, subsets, PCNormalForm};
use crate::words::{GeneratorSymbol, LetterKind};

pub(super) fn recognize(letters: &[GeneratorSymbol]) -> Option<PCNormalForm> {
    let split = letters
        .iter()
        .take_while(|s| s.kind == LetterKind::F)
        .count();
    let f_indices: Vec<usize> = letters[..split].iter().map(|s| s.first).collect();
    if letters[split..].iter().any(|s| s.kind != LetterKind::E) {
        return None;
    }
    let e_indices: Vec<usize> = letters[split..].iter().map(|s| s.first).collect();
    let runs = split_runs(&e_indices);
    let ok = strictly_increasing(f_indices.iter().copied())
        && strictly_increasing(runs.iter().map(|r| r.0))
        && strictly_increasing(runs.iter().map(|r| r.1))
        && f_indices
            .iter()
            .all(|&p| runs.iter().all(|&(j, _)| p != j + 1));
    ok.then_some(PCNormalForm { f_indices, runs })
}

pub(super) fn enumerate(n: usize) -> Vec<Vec<GeneratorSymbol>> {
    let mut out = Vec::new();
    for runs in run_sequences(n - 1) {
        let pool: Vec<usize> = (1..=n)
            .filter(|&p| runs.iter().all(|&(j, _)| p != j + 1))
            .collect();
        for fs in subsets(&pool) {
            let mut w: Vec<GeneratorSymbol> = fs
                .into_iter()
                .map(|p| GeneratorSymbol::single(LetterKind::F, p))
                .collect();
            for &(j, i) in &runs {
                w.extend(run_letters(LetterKind::E, j, i));
            }
            out.push(w);
        }
    }
    out
}
