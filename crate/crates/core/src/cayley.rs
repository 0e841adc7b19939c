//! Right Cayley graph of a presented family as a Graphviz digraph.

use std::fmt::Write;

use crate::chain_maps::{brute_force_enumerate, generator, ChainSize, Family};
use crate::error::{Error, Result};
use crate::words::alphabet;

/// One node per element, named by its image sequence, and one edge
/// `x -> x g` labeled `g` for every element `x` and generator `g`.
pub fn cayley_dot(fam: Family, n: ChainSize) -> Result<String> {
    let letters = alphabet(fam, n);
    if fam == Family::PD {
        return Err(Error::UnsupportedFamily {
            family: fam,
            operation: "cayley",
            hint: Some("PD_n has no generating set here; use D_{n+1}"),
        });
    }
    let gens = letters
        .iter()
        .map(|&s| Ok((s, generator(fam, s, n)?)))
        .collect::<Result<Vec<_>>>()?;
    let elements = brute_force_enumerate(fam, n)?;
    let mut out = String::new();
    writeln!(out, "digraph \"{fam}_{n}\" {{").unwrap();
    for x in &elements {
        writeln!(out, "  \"{x}\";").unwrap();
    }
    for x in &elements {
        for (sym, g) in &gens {
            writeln!(out, "  \"{x}\" -> \"{}\" [label=\"{sym}\"];", x.compose(g)?).unwrap();
        }
    }
    out.push_str("}\n");
    Ok(out)
}
