//! Partial transformations of the chain `{1..n}` and the six order-decreasing
//! families they form.
//!
//! Maps act on the right: `compose(a, b)` applies `a` first and then `b`, so a
//! point `x` goes to `(x a) b`. The presentation relations only hold under this
//! convention (see [`composition_convention_self_test`]).

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::words::{GeneratorSymbol, LetterKind};

/// Largest supported chain; images are stored as bytes.
pub const MAX_CHAIN: usize = u8::MAX as usize;

/// Default bound on `(n+1)^n` for [`brute_force_enumerate`]. Admits `n <= 8`.
pub const DEFAULT_CANDIDATE_CAP: u128 = 1 << 27;

/// Number of points of the chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct ChainSize(usize);

impl ChainSize {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(invalid("chain size must be at least 1"));
        }
        if n > MAX_CHAIN {
            return Err(invalid(format!("chain size {n} exceeds {MAX_CHAIN}")));
        }
        Ok(ChainSize(n))
    }

    pub fn get(self) -> usize {
        self.0
    }

    /// The chain with one more point, used by [`adjoin_bottom`].
    pub fn succ(self) -> Result<Self> {
        ChainSize::new(self.0 + 1)
    }

    pub fn points(self) -> std::ops::RangeInclusive<usize> {
        1..=self.0
    }
}

impl TryFrom<usize> for ChainSize {
    type Error = Error;
    fn try_from(n: usize) -> Result<Self> {
        ChainSize::new(n)
    }
}

impl From<ChainSize> for usize {
    fn from(n: ChainSize) -> usize {
        n.0
    }
}

impl fmt::Display for ChainSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A partial self-map of `{1..n}`. `images[x-1] == 0` means `x` is outside
/// the domain.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPartialMap")]
pub struct PartialMap {
    n: ChainSize,
    images: Vec<u8>,
}

#[derive(Deserialize)]
struct RawPartialMap {
    n: usize,
    images: Vec<usize>,
}

impl TryFrom<RawPartialMap> for PartialMap {
    type Error = Error;
    fn try_from(raw: RawPartialMap) -> Result<Self> {
        PartialMap::from_images(ChainSize::new(raw.n)?, &raw.images)
    }
}

impl PartialMap {
    /// Builds a map from an image sequence using `0` for undefined points.
    pub fn from_images(n: ChainSize, images: &[usize]) -> Result<Self> {
        if images.len() != n.get() {
            return Err(invalid(format!(
                "expected {} images, got {}",
                n.get(),
                images.len()
            )));
        }
        if let Some(&bad) = images.iter().find(|&&y| y > n.get()) {
            return Err(invalid(format!("image {bad} outside 0..={}", n.get())));
        }
        Ok(PartialMap {
            n,
            images: images.iter().map(|&y| y as u8).collect(),
        })
    }

    pub(crate) fn from_bytes_unchecked(n: ChainSize, images: Vec<u8>) -> Self {
        debug_assert_eq!(images.len(), n.get());
        PartialMap { n, images }
    }

    pub fn n(&self) -> ChainSize {
        self.n
    }

    /// Image sequence with `0` for undefined points.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&y| y as usize).collect()
    }

    /// Image of `x`, or `None` if `x` is outside the domain or the chain.
    pub fn apply(&self, x: usize) -> Option<usize> {
        match x.checked_sub(1).and_then(|i| self.images.get(i)) {
            Some(&y) if y != 0 => Some(y as usize),
            _ => None,
        }
    }

    pub fn domain(&self) -> Vec<usize> {
        self.n
            .points()
            .filter(|&x| self.apply(x).is_some())
            .collect()
    }

    /// Sorted image set.
    pub fn image_set(&self) -> Vec<usize> {
        let mut im: Vec<usize> = self
            .domain()
            .iter()
            .filter_map(|&x| self.apply(x))
            .collect();
        im.sort_unstable();
        im.dedup();
        im
    }

    pub fn is_full(&self) -> bool {
        self.images.iter().all(|&y| y != 0)
    }

    /// `self` first, then `other`.
    pub fn compose(&self, other: &PartialMap) -> Result<PartialMap> {
        if self.n != other.n {
            return Err(invalid(format!(
                "cannot compose maps on chains of size {} and {}",
                self.n, other.n
            )));
        }
        Ok(self.then(other))
    }

    /// Composition for maps already known to share a chain.
    pub(crate) fn then(&self, other: &PartialMap) -> PartialMap {
        let images = self
            .images
            .iter()
            .map(|&y| {
                if y == 0 {
                    0
                } else {
                    other.images[y as usize - 1]
                }
            })
            .collect();
        PartialMap { n: self.n, images }
    }

    /// Smallest point where the two maps differ (as partial maps).
    pub fn first_difference(&self, other: &PartialMap) -> Option<usize> {
        self.images
            .iter()
            .zip(&other.images)
            .position(|(a, b)| a != b)
            .map(|i| i + 1)
    }
}

impl fmt::Display for PartialMap {
    /// Comma-separated image sequence, e.g. `1,1,3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, y) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{y}")?;
        }
        Ok(())
    }
}

/// Builds a map from explicit `point -> value` assignments; every other point
/// is undefined.
pub fn make_partial_map(n: ChainSize, assignments: &[(usize, usize)]) -> Result<PartialMap> {
    let mut images = vec![0u8; n.get()];
    for &(x, y) in assignments {
        if !(1..=n.get()).contains(&x) {
            return Err(invalid(format!("point {x} outside 1..={n}")));
        }
        if !(1..=n.get()).contains(&y) {
            return Err(invalid(format!("value {y} outside 1..={n}")));
        }
        if images[x - 1] != 0 {
            return Err(invalid(format!("point {x} assigned twice")));
        }
        images[x - 1] = y as u8;
    }
    Ok(PartialMap { n, images })
}

pub fn identity(n: ChainSize) -> PartialMap {
    PartialMap {
        n,
        images: (1..=n.get()).map(|x| x as u8).collect(),
    }
}

/// Partial identity on `{1..n} \ {removed}`.
pub(crate) fn partial_identity_without(n: ChainSize, removed: usize) -> PartialMap {
    let images = (1..=n.get())
        .map(|x| if x == removed { 0 } else { x as u8 })
        .collect();
    PartialMap { n, images }
}

/// Map sending `from` to `to`, optionally dropping `removed`, fixing the rest.
fn moving(n: ChainSize, from: usize, to: usize, removed: Option<usize>) -> PartialMap {
    let images = (1..=n.get())
        .map(|x| {
            if Some(x) == removed {
                0
            } else if x == from {
                to as u8
            } else {
                x as u8
            }
        })
        .collect();
    PartialMap { n, images }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PropertySet {
    pub order_decreasing: bool,
    pub order_preserving: bool,
    pub injective: bool,
    pub full: bool,
}

pub fn classify(map: &PartialMap) -> PropertySet {
    let defined: Vec<(usize, usize)> = map
        .n
        .points()
        .filter_map(|x| map.apply(x).map(|y| (x, y)))
        .collect();
    let order_decreasing = defined.iter().all(|&(x, y)| y <= x);
    // Domain points are visited in increasing order.
    let order_preserving = defined.windows(2).all(|w| w[0].1 <= w[1].1);
    let mut seen = HashSet::with_capacity(defined.len());
    let injective = defined.iter().all(|&(_, y)| seen.insert(y));
    PropertySet {
        order_decreasing,
        order_preserving,
        injective,
        full: defined.len() == map.n.get(),
    }
}

/// The six families of order-decreasing partial maps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    /// Full maps.
    D,
    /// All partial maps.
    PD,
    /// Partial injective maps.
    ID,
    /// Full order-preserving maps (Catalan monoid).
    C,
    /// Partial injective order-preserving maps.
    IC,
    /// Partial order-preserving maps (Schröder monoid).
    PC,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::D,
        Family::PD,
        Family::ID,
        Family::C,
        Family::IC,
        Family::PC,
    ];

    /// Families that carry a presentation.
    pub const PRESENTED: [Family; 5] = [Family::D, Family::ID, Family::C, Family::IC, Family::PC];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::D => "D",
            Family::PD => "PD",
            Family::ID => "ID",
            Family::C => "C",
            Family::IC => "IC",
            Family::PC => "PC",
        }
    }

    /// `(full, injective, order_preserving)` requirements; order-decreasing
    /// is always required.
    pub fn requirements(self) -> (bool, bool, bool) {
        match self {
            Family::D => (true, false, false),
            Family::PD => (false, false, false),
            Family::ID => (false, true, false),
            Family::C => (true, false, true),
            Family::IC => (false, true, true),
            Family::PC => (false, false, true),
        }
    }

    pub fn admits(self, props: PropertySet) -> bool {
        let (full, injective, preserving) = self.requirements();
        props.order_decreasing
            && (!full || props.full)
            && (!injective || props.injective)
            && (!preserving || props.order_preserving)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|fam| fam.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                invalid(format!(
                    "unknown family '{s}' (expected one of d, pd, id, c, ic, pc)"
                ))
            })
    }
}

pub fn in_family(map: &PartialMap, fam: Family) -> bool {
    fam.admits(classify(map))
}

/// Every member of `fam` on `{1..n}`, sorted lexicographically by image
/// sequence.
pub fn brute_force_enumerate(fam: Family, n: ChainSize) -> Result<Vec<PartialMap>> {
    brute_force_enumerate_with_cap(fam, n, DEFAULT_CANDIDATE_CAP)
}

/// As [`brute_force_enumerate`], refusing chains with more than `cap`
/// candidate image sequences.
///
/// Candidates are visited in lexicographic order. A prefix that already
/// breaks order-decrease is skipped as a block since no family admits it; every
/// surviving candidate goes through [`in_family`].
pub fn brute_force_enumerate_with_cap(
    fam: Family,
    n: ChainSize,
    cap: u128,
) -> Result<Vec<PartialMap>> {
    let size = n.get();
    let candidates = (size as u128 + 1).checked_pow(size as u32);
    if candidates.is_none_or(|c| c > cap) {
        return Err(Error::Resource(format!(
            "(n+1)^n candidate maps for n = {size} exceed the cap of {cap}"
        )));
    }

    let mut out = Vec::new();
    let mut images = vec![0u8; size];
    // Odometer over image sequences, most significant digit first.
    loop {
        let candidate = PartialMap::from_bytes_unchecked(n, images.clone());
        if in_family(&candidate, fam) {
            out.push(candidate);
        }
        // Advance: find the rightmost digit that can still grow within the
        // order-decreasing bound (digit at point x may be at most x).
        let mut pos = size;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            if (images[pos] as usize) < pos + 1 {
                images[pos] += 1;
                for d in &mut images[pos + 1..] {
                    *d = 0;
                }
                break;
            }
        }
    }
}

/// The concrete map that a presentation letter stands for.
pub fn generator(fam: Family, sym: GeneratorSymbol, n: ChainSize) -> Result<PartialMap> {
    sym.validate(fam, n)?;
    let map = match (fam, sym.kind, sym.second) {
        (Family::D, LetterKind::E, Some(j)) => moving(n, j, sym.first, None),
        (Family::ID, LetterKind::F, None) => partial_identity_without(n, sym.first),
        (Family::ID, LetterKind::A, Some(j)) => moving(n, j, sym.first, Some(sym.first)),
        (Family::C, LetterKind::E, None) => moving(n, sym.first + 1, sym.first, None),
        (Family::IC, LetterKind::E, None) => partial_identity_without(n, sym.first),
        (Family::IC, LetterKind::A, None) => moving(n, sym.first + 1, sym.first, Some(sym.first)),
        (Family::PC, LetterKind::F, None) => partial_identity_without(n, sym.first),
        (Family::PC, LetterKind::E, None) => moving(n, sym.first + 1, sym.first, None),
        _ => unreachable!("validate() accepted {sym} for {fam}"),
    };
    debug_assert!(in_family(&map, fam));
    Ok(map)
}

/// Embeds a member of `PD_n` into `D_{n+1}` by adding a new bottom point.
///
/// Point `1` is the new bottom; point `x` of the old chain becomes `x + 1`.
/// Undefined points fall to the bottom.
pub fn adjoin_bottom(map: &PartialMap) -> Result<PartialMap> {
    if !in_family(map, Family::PD) {
        return Err(invalid(format!("{map} is not order-decreasing")));
    }
    let n = map.n.succ()?;
    let mut images = Vec::with_capacity(n.get());
    images.push(1u8);
    images.extend(map.images.iter().map(|&y| y + 1));
    Ok(PartialMap { n, images })
}

/// Checks that the right-action convention is the one the relations need:
/// `e_{1,3} e_{2,3} = e_{1,3}` in `D_3` must hold left-to-right and fail under
/// the opposite order.
pub fn composition_convention_self_test() -> Result<()> {
    let n = ChainSize::new(3)?;
    let e13 = generator(Family::D, GeneratorSymbol::pair(LetterKind::E, 1, 3), n)?;
    let e23 = generator(Family::D, GeneratorSymbol::pair(LetterKind::E, 2, 3), n)?;
    let forward = e13.compose(&e23)?;
    let backward = e23.compose(&e13)?;
    if forward != e13 || backward == e13 {
        return Err(Error::Validation(
            "composition convention self-test failed: expected left-to-right action".into(),
        ));
    }
    Ok(())
}
