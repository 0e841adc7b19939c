//! Normal forms for the partial one-to-one order-preserving order-decreasing
//! maps, and the generator factorization of their elements.
//!
//! `a_i` is the map `i+1 -> i` undefined at `i`, so the run
//! `a_j a_{j-1} ... a_t` sends `j+1` to `t` and is undefined on `t..=j`.

use super::{check_member, run_letters, run_sequences, split_runs, strictly_increasing, subsets};
use super::{Direction, ICNormalForm, Rewriter};
use crate::chain_maps::{Family, PartialMap};
use crate::error::Result;
use crate::words::{GeneratorSymbol, LetterKind, Word};

#[derive(Clone, Copy)]
enum Letter {
    E(usize),
    A(usize),
}

fn letter(sym: GeneratorSymbol) -> Letter {
    match sym.kind {
        LetterKind::E => Letter::E(sym.first),
        LetterKind::A => Letter::A(sym.first),
        _ => unreachable!("not an IC letter: {sym}"),
    }
}

fn a_index(sym: GeneratorSymbol) -> usize {
    match letter(sym) {
        Letter::A(i) => i,
        Letter::E(_) => unreachable!("expected an a letter"),
    }
}

/// Points that an `e` prefix must avoid for the given runs.
fn blocked(runs: &[(usize, usize)]) -> Vec<usize> {
    let mut out: Vec<usize> = runs.iter().flat_map(|&(j, t)| t..=j + 1).collect();
    out.sort_unstable();
    out.dedup();
    out
}

pub(super) fn recognize(letters: &[GeneratorSymbol]) -> Option<ICNormalForm> {
    let split = letters
        .iter()
        .take_while(|s| s.kind == LetterKind::E)
        .count();
    let e_indices: Vec<usize> = letters[..split].iter().map(|s| s.first).collect();
    if letters[split..].iter().any(|s| s.kind != LetterKind::A) {
        return None;
    }
    let a_indices: Vec<usize> = letters[split..].iter().map(|s| s.first).collect();
    let runs = split_runs(&a_indices);
    let ok = strictly_increasing(e_indices.iter().copied())
        && strictly_increasing(runs.iter().map(|r| r.0))
        && strictly_increasing(runs.iter().map(|r| r.1))
        && {
            let blocked = blocked(&runs);
            e_indices.iter().all(|x| blocked.binary_search(x).is_err())
        };
    ok.then_some(ICNormalForm { e_indices, runs })
}

pub(super) fn enumerate(n: usize) -> Vec<Vec<GeneratorSymbol>> {
    let mut out = Vec::new();
    for runs in run_sequences(n - 1) {
        let blocked = blocked(&runs);
        let pool: Vec<usize> = (1..=n)
            .filter(|x| blocked.binary_search(x).is_err())
            .collect();
        for es in subsets(&pool) {
            let mut w: Vec<GeneratorSymbol> = es
                .into_iter()
                .map(|x| GeneratorSymbol::single(LetterKind::E, x))
                .collect();
            for &(j, t) in &runs {
                w.extend(run_letters(LetterKind::A, j, t));
            }
            out.push(w);
        }
    }
    out
}

/// Writes an element as a product of generators: one `e[x]` for each point
/// outside the domain, then for each moved point `j -> t` (in increasing
/// order) the run `a[j-1] ... a[t]`.
pub fn factorize_ic(map: &PartialMap) -> Result<Word> {
    check_member(map, Family::IC)?;
    let n = map.n();
    let mut letters: Vec<GeneratorSymbol> = n
        .points()
        .filter(|&x| map.apply(x).is_none())
        .map(|x| GeneratorSymbol::single(LetterKind::E, x))
        .collect();
    for j in n.points() {
        if let Some(t) = map.apply(j).filter(|&t| t != j) {
            letters.extend(run_letters(LetterKind::A, j - 1, t));
        }
    }
    Word::new(Family::IC, n, letters)
}

pub(super) fn normalize(rw: &mut Rewriter) -> Result<()> {
    loop {
        gather_es(rw)?;
        let base = rw
            .word
            .iter()
            .take_while(|s| s.kind == LetterKind::E)
            .count();
        if merge_as(rw, base)? || release_e(rw, base)? {
            continue;
        }
        return Ok(());
    }
}

/// Moves every `e` to the front, sorted and without repeats.
fn gather_es(rw: &mut Rewriter) -> Result<()> {
    let mut p = 0;
    while p + 1 < rw.len() {
        match (letter(rw.word[p]), letter(rw.word[p + 1])) {
            (Letter::A(j), Letter::E(i)) => {
                if i == j + 1 {
                    rw.apply("25b", &[j], p, Direction::LR)?;
                } else if i == j {
                    rw.apply("26b", &[j], p, Direction::LR)?;
                } else {
                    rw.apply("23", &[i, j], p, Direction::RL)?;
                }
            }
            (Letter::E(y), Letter::E(x)) if y >= x => {
                if y == x {
                    rw.apply("21", &[x], p, Direction::LR)?;
                } else {
                    rw.apply("22", &[x, y], p, Direction::RL)?;
                }
            }
            _ => {
                p += 1;
                continue;
            }
        }
        p = p.saturating_sub(1);
    }
    Ok(())
}

/// Brings the `a` block into run form. Returns `true` if an `a a` pair had
/// to be turned into `e` letters, which sends the loop back to stage one.
fn merge_as(rw: &mut Rewriter, base: usize) -> Result<bool> {
    let mut end = base;
    while end < rw.len() {
        match absorb(rw, base, end)? {
            Some(next) => end = next,
            None => return Ok(true),
        }
    }
    Ok(false)
}

/// `word[base..m]` is in run form and `word[m] = a_i`. Returns the new end of
/// the run-form block, or `None` if `e` letters were produced.
fn absorb(rw: &mut Rewriter, base: usize, m: usize) -> Result<Option<usize>> {
    let i = a_index(rw.word[m]);
    let indices: Vec<usize> = rw.word[base..m].iter().map(|&s| a_index(s)).collect();
    let runs = split_runs(&indices);
    let Some(&(jp, tp)) = runs.last() else {
        return Ok(Some(m + 1));
    };
    let start_p = m - (jp - tp + 1);
    if i > jp {
        return Ok(Some(m + 1));
    }
    if i == tp {
        square(rw, i, m - 1)?;
        return Ok(None);
    }
    if i > tp {
        // Slide a_i left to sit after a_{i-1}, then a_i a_{i-1} a_i = a_i a_{i-1}.
        let q = start_p + (jp - (i - 1));
        for r in (q + 1..m).rev() {
            let x = a_index(rw.word[r]);
            rw.apply("24", &[x, i], r, Direction::LR)?;
        }
        drop_repeated_top(rw, i - 1, q - 1)?;
        return Ok(Some(m));
    }
    if i + 1 < tp {
        // a_i commutes with the whole last run.
        for r in (start_p..m).rev() {
            let x = a_index(rw.word[r]);
            rw.apply("24", &[i, x], r, Direction::RL)?;
        }
        let len_p = jp - tp + 1;
        return Ok(absorb(rw, base, start_p)?.map(|k| k + len_p));
    }
    // i = tp - 1: extend the last run, absorbing the previous run if it ends at i.
    let prev = runs.len().checked_sub(2).map(|k| runs[k]);
    match prev {
        Some((jq, tq)) if tq == i => {
            let mut start = start_p;
            for y in tq..=jq {
                // The previous run ends in a_y at start - 1; the extended last
                // run a_{jp} ... a_i begins at start.
                for r in start - 1..(start + jp) - (y + 2) {
                    let x = a_index(rw.word[r + 1]);
                    rw.apply("24", &[y, x], r, Direction::LR)?;
                }
                drop_repeated_bottom(rw, y, (start + jp) - (y + 2))?;
                start -= 1;
            }
            Ok(Some(start + (jp - i + 1)))
        }
        _ => Ok(Some(m + 1)),
    }
}

/// `a_k a_k = e_k e_{k+1}` at `pos`.
fn square(rw: &mut Rewriter, k: usize, pos: usize) -> Result<()> {
    rw.apply("25a", &[k], pos + 1, Direction::RL)?;
    rw.apply("26b", &[k], pos, Direction::LR)?;
    rw.apply("26a", &[k], pos + 1, Direction::LR)?;
    rw.apply("21", &[k], pos, Direction::LR)
}

/// `a_{k+1} a_k a_{k+1} = a_{k+1} a_k` at `pos`.
fn drop_repeated_top(rw: &mut Rewriter, k: usize, pos: usize) -> Result<()> {
    rw.apply("25b", &[k + 1], pos, Direction::RL)?;
    rw.apply("23", &[k + 2, k], pos + 1, Direction::LR)?;
    rw.apply("26a", &[k + 1], pos + 2, Direction::LR)?;
    rw.apply("25b", &[k], pos + 1, Direction::LR)?;
    rw.apply("23", &[k + 2, k], pos + 1, Direction::RL)?;
    rw.apply("25b", &[k + 1], pos, Direction::LR)
}

/// `a_k a_{k+1} a_k = a_{k+1} a_k` at `pos`.
fn drop_repeated_bottom(rw: &mut Rewriter, k: usize, pos: usize) -> Result<()> {
    rw.apply("25a", &[k], pos + 2, Direction::RL)?;
    rw.apply("23", &[k, k + 1], pos + 1, Direction::RL)?;
    rw.apply("26b", &[k], pos, Direction::LR)?;
    rw.apply("25a", &[k + 1], pos + 1, Direction::LR)?;
    rw.apply("23", &[k, k + 1], pos, Direction::LR)?;
    rw.apply("25a", &[k], pos + 1, Direction::LR)
}

/// Pushes an `e_x` that clashes with the runs to the right until it is
/// absorbed or turns an `a` into `e` letters.
fn release_e(rw: &mut Rewriter, base: usize) -> Result<bool> {
    let indices: Vec<usize> = rw.word[base..].iter().map(|&s| a_index(s)).collect();
    let blocked = blocked(&split_runs(&indices));
    let Some(q) = (0..base)
        .rev()
        .find(|&q| blocked.binary_search(&rw.word[q].first).is_ok())
    else {
        return Ok(false);
    };
    let x = rw.word[q].first;
    let mut r = q;
    while r + 1 < base {
        let y = rw.word[r + 1].first;
        rw.apply("22", &[x, y], r, Direction::LR)?;
        r += 1;
    }
    loop {
        let m = a_index(rw.word[r + 1]);
        if x == m {
            rw.apply("25a", &[m], r, Direction::LR)?;
            return Ok(true);
        }
        if x == m + 1 {
            rw.apply("26a", &[m], r, Direction::LR)?;
            return Ok(true);
        }
        rw.apply("23", &[x, m], r, Direction::LR)?;
        r += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain_maps::{identity, make_partial_map, ChainSize};
    use crate::words::evaluate;

    #[test]
    fn factorize_examples() {
        let n = ChainSize::new(3).unwrap();
        assert_eq!(factorize_ic(&identity(n)).unwrap().to_string(), "1");
        let m = make_partial_map(n, &[(2, 1), (3, 2)]).unwrap();
        let w = factorize_ic(&m).unwrap();
        assert_eq!(w.to_string(), "e[1] a[1] a[2]");
        assert_eq!(evaluate(&w), m);
        let b1 = make_partial_map(n, &[(2, 1), (3, 3)]).unwrap();
        // 1 is outside the domain, so the prefix keeps e[1] even though a[1] alone
        // already evaluates to the same map.
        let w = factorize_ic(&b1).unwrap();
        assert_eq!(w.to_string(), "e[1] a[1]");
        assert_eq!(evaluate(&w), b1);
        let not_ic = make_partial_map(n, &[(2, 1), (3, 1)]).unwrap();
        assert!(factorize_ic(&not_ic).is_err());
    }

    #[test]
    fn blocked_points() {
        assert_eq!(blocked(&[(2, 1), (4, 4)]), [1, 2, 3, 4, 5]);
        assert_eq!(blocked(&[]), Vec::<usize>::new());
    }
}
