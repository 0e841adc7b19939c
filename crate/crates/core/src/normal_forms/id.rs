//! Normal forms for the partial one-to-one order-decreasing maps.
//!
//! The normalizer runs four stages until none of them changes the word:
//!
//! 1. move every `f` to the front, sorted and without repeats;
//! 2. sort the `a` letters by second index, collapsing adjacent pairs that
//!    share an index;
//! 3. remove a repeated first index `t` by threading `f_t` leftwards;
//! 4. push an `f_x` whose index is used by some `a` to the right until it is
//!    absorbed or turns that `a` into `f`s.
//!
//! Stages 2–4 either reduce the number of `a` letters or, with that number
//! fixed, the number of `f` letters, so the loop terminates.

use std::collections::BTreeSet;

use super::{strictly_increasing, subsets, Direction, IDNormalForm, Rewriter};
use crate::error::Result;
use crate::words::{GeneratorSymbol, LetterKind};

#[derive(Clone, Copy)]
enum Letter {
    F(usize),
    A(usize, usize),
}

fn letter(sym: GeneratorSymbol) -> Letter {
    match (sym.kind, sym.second) {
        (LetterKind::F, None) => Letter::F(sym.first),
        (LetterKind::A, Some(j)) => Letter::A(sym.first, j),
        _ => unreachable!("not an ID letter: {sym}"),
    }
}

fn f(i: usize) -> GeneratorSymbol {
    GeneratorSymbol::single(LetterKind::F, i)
}

fn a(t: usize, j: usize) -> GeneratorSymbol {
    GeneratorSymbol::pair(LetterKind::A, t, j)
}

pub(super) fn recognize(letters: &[GeneratorSymbol]) -> Option<IDNormalForm> {
    let split = letters
        .iter()
        .take_while(|s| s.kind == LetterKind::F)
        .count();
    let f_indices: Vec<usize> = letters[..split].iter().map(|s| s.first).collect();
    let mut a_pairs = Vec::with_capacity(letters.len() - split);
    for &s in &letters[split..] {
        match letter(s) {
            Letter::A(t, j) => a_pairs.push((t, j)),
            Letter::F(_) => return None,
        }
    }
    if !strictly_increasing(f_indices.iter().copied())
        || !strictly_increasing(a_pairs.iter().map(|p| p.1))
    {
        return None;
    }
    let mut ts = BTreeSet::new();
    if !a_pairs.iter().all(|&(t, _)| ts.insert(t)) {
        return None;
    }
    let used: BTreeSet<usize> = a_pairs.iter().flat_map(|&(t, j)| [t, j]).collect();
    if f_indices.iter().any(|x| used.contains(x)) {
        return None;
    }
    Some(IDNormalForm { f_indices, a_pairs })
}

pub(super) fn enumerate(n: usize) -> Vec<Vec<GeneratorSymbol>> {
    // Choose the a-part: for each j, nothing or a fresh t < j.
    let mut parts: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
    for j in 2..=n {
        let mut next = Vec::new();
        for part in &parts {
            next.push(part.clone());
            for t in (1..j).filter(|&t| part.iter().all(|p| p.0 != t)) {
                let mut p = part.clone();
                p.push((t, j));
                next.push(p);
            }
        }
        parts = next;
    }
    let mut out = Vec::new();
    for part in parts {
        let pool: Vec<usize> = (1..=n)
            .filter(|&x| part.iter().all(|&(t, j)| x != t && x != j))
            .collect();
        for fs in subsets(&pool) {
            let mut w: Vec<GeneratorSymbol> = fs.into_iter().map(f).collect();
            w.extend(part.iter().map(|&(t, j)| a(t, j)));
            out.push(w);
        }
    }
    out
}

pub(super) fn normalize(rw: &mut Rewriter) -> Result<()> {
    loop {
        gather_fs(rw)?;
        let base = rw
            .word
            .iter()
            .take_while(|s| s.kind == LetterKind::F)
            .count();
        if sort_as(rw, base)? || merge_repeated_t(rw, base)? || release_f(rw, base)? {
            continue;
        }
        return Ok(());
    }
}

/// Stage 1.
fn gather_fs(rw: &mut Rewriter) -> Result<()> {
    let mut p = 0;
    while p + 1 < rw.len() {
        match (letter(rw.word[p]), letter(rw.word[p + 1])) {
            (Letter::A(i, j), Letter::F(k)) => {
                if k == j {
                    rw.apply("d2", &[i, j], p, Direction::LR)?;
                } else if k == i {
                    rw.apply("e2", &[i, j], p, Direction::LR)?;
                } else {
                    rw.apply("c", &[k, i, j], p, Direction::RL)?;
                }
            }
            (Letter::F(y), Letter::F(x)) if y >= x => {
                if y == x {
                    rw.apply("a", &[x], p, Direction::LR)?;
                } else {
                    rw.apply("b", &[x, y], p, Direction::RL)?;
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

/// Stage 2. Returns `true` once an `a` letter has been eliminated.
fn sort_as(rw: &mut Rewriter, base: usize) -> Result<bool> {
    let mut p = base;
    while p + 1 < rw.len() {
        let (Letter::A(t, j), Letter::A(t2, j2)) = (letter(rw.word[p]), letter(rw.word[p + 1]))
        else {
            unreachable!("stage 1 leaves only a letters after the f block");
        };
        if t == t2 {
            // a_{t,j} a_{t,j2} = a_{t,j} f_t a_{t,j2} = f_t f_j a_{t,j2}
            rw.apply("d1", &[t, j2], p + 1, Direction::RL)?;
            rw.apply("e2", &[t, j], p, Direction::LR)?;
            return Ok(true);
        }
        if j == j2 {
            // a_{t,j} a_{t2,j} = a_{t,j} f_j a_{t2,j} = a_{t,j} f_{t2} f_j
            rw.apply("d2", &[t, j], p, Direction::RL)?;
            rw.apply("e1", &[t2, j], p + 1, Direction::LR)?;
            return Ok(true);
        }
        if j2 < j {
            if t == j2 {
                rw.apply("g", &[t2, j2, j], p, Direction::LR)?;
                return Ok(true);
            }
            if (t, j) < (t2, j2) {
                rw.apply("f", &[t, j, t2, j2], p, Direction::LR)?;
            } else {
                rw.apply("f", &[t2, j2, t, j], p, Direction::RL)?;
            }
            p = p.saturating_sub(1).max(base);
            continue;
        }
        p += 1;
    }
    Ok(false)
}

/// Stage 3: `a_{t,j_s} ... a_{t,j_p}` with no `t` in between.
fn merge_repeated_t(rw: &mut Rewriter, base: usize) -> Result<bool> {
    let pairs: Vec<(usize, usize)> = rw.word[base..]
        .iter()
        .map(|&s| match letter(s) {
            Letter::A(t, j) => (t, j),
            Letter::F(_) => unreachable!(),
        })
        .collect();
    let found = (1..pairs.len()).find_map(|q| {
        (0..q)
            .rev()
            .find(|&s| pairs[s].0 == pairs[q].0)
            .map(|s| (s, q))
    });
    let Some((s, q)) = found else {
        return Ok(false);
    };
    let t = pairs[q].0;
    rw.apply("d1", &[t, pairs[q].1], base + q, Direction::RL)?;
    for r in (s + 1..q).rev() {
        let (tr, jr) = pairs[r];
        rw.apply("c", &[t, tr, jr], base + r, Direction::RL)?;
    }
    rw.apply("e2", &[t, pairs[s].1], base + s, Direction::LR)?;
    Ok(true)
}

/// Stage 4.
fn release_f(rw: &mut Rewriter, base: usize) -> Result<bool> {
    let used: BTreeSet<usize> = rw.word[base..]
        .iter()
        .flat_map(|&s| match letter(s) {
            Letter::A(t, j) => [t, j],
            Letter::F(_) => unreachable!(),
        })
        .collect();
    let Some(q) = (0..base).rev().find(|&q| used.contains(&rw.word[q].first)) else {
        return Ok(false);
    };
    let x = rw.word[q].first;
    let mut r = q;
    while r + 1 < base {
        let y = rw.word[r + 1].first;
        rw.apply("b", &[x, y], r, Direction::LR)?;
        r += 1;
    }
    loop {
        let Letter::A(t, j) = letter(rw.word[r + 1]) else {
            unreachable!("f block is sorted");
        };
        if x == t {
            rw.apply("d1", &[t, j], r, Direction::LR)?;
            return Ok(true);
        }
        if x == j {
            rw.apply("e1", &[t, j], r, Direction::LR)?;
            return Ok(true);
        }
        rw.apply("c", &[x, t, j], r, Direction::LR)?;
        r += 1;
    }
}
