//! Normal forms for the full order-decreasing maps.

use super::{strictly_increasing, DNormalForm, Direction, Rewriter};
use crate::error::Result;
use crate::words::{GeneratorSymbol, LetterKind};

fn indices(sym: GeneratorSymbol) -> (usize, usize) {
    (sym.first, sym.second.expect("D letters carry two indices"))
}

pub(super) fn recognize(letters: &[GeneratorSymbol]) -> Option<DNormalForm> {
    let pairs: Vec<(usize, usize)> = letters.iter().map(|&s| indices(s)).collect();
    strictly_increasing(pairs.iter().map(|p| p.1)).then_some(DNormalForm { pairs })
}

/// For each `j` in `2..=n`: no letter, or one `e[i,j]` with `i < j`.
pub(super) fn enumerate(n: usize) -> Vec<Vec<GeneratorSymbol>> {
    let mut out = vec![Vec::new()];
    for j in 2..=n {
        let mut next = Vec::with_capacity(out.len() * j);
        for prefix in &out {
            next.push(prefix.clone());
            for i in 1..j {
                let mut w = prefix.clone();
                w.push(GeneratorSymbol::pair(LetterKind::E, i, j));
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// Left to right: each new letter is absorbed into the normal prefix.
pub(super) fn normalize(rw: &mut Rewriter) -> Result<()> {
    let mut prefix = 0;
    while prefix < rw.len() {
        prefix = absorb(rw, prefix)?;
    }
    Ok(())
}

/// `word[..m]` is in normal form and `word[m]` is the incoming letter.
/// Returns the length of the normal prefix after absorbing it.
fn absorb(rw: &mut Rewriter, m: usize) -> Result<usize> {
    if m == 0 {
        return Ok(1);
    }
    let (a, b) = indices(rw.word[m - 1]);
    let (c, d) = indices(rw.word[m]);
    if d > b {
        return Ok(m + 1);
    }
    if d == b {
        if c == a {
            rw.apply("1", &[a, b], m - 1, Direction::LR)?;
        } else {
            rw.apply("5", &[a, c, b], m - 1, Direction::LR)?;
        }
        return Ok(m);
    }
    // d < b: rewrite e_{ab} e_{cd} as e_{pq} e_{rb} and push e_{pq} left.
    if c != a && c != b && d != a {
        if (a, b) < (c, d) {
            rw.apply("2", &[a, b, c, d], m - 1, Direction::LR)?;
        } else {
            rw.apply("2", &[c, d, a, b], m - 1, Direction::RL)?;
        }
    } else if d == a {
        // e_{ab} e_{ca} = e_{ca} e_{cb}
        rw.apply("3", &[c, a, b], m - 1, Direction::RL)?;
    } else {
        // c == a: e_{ab} e_{ad} = e_{db} e_{ad} = e_{ad} e_{ab}
        rw.apply("4", &[a, d, b], m - 1, Direction::LR)?;
        rw.apply("3", &[a, d, b], m - 1, Direction::RL)?;
    }
    // The letter left behind at m has second index b, larger than anything the
    // recursive call can produce.
    let r = absorb(rw, m - 1)?;
    Ok(r + 1)
}
