//! Size of a finitely presented monoid, computed from the presentation alone
//! by coset enumeration over the trivial submonoid (HLT strategy).
//!
//! Every live coset is the class of some word. Relations are traced from every
//! coset, which makes the resulting right action respect the two-sided
//! congruence. Coincidences are merged through a union-find forest; table
//! entries may point at merged cosets and are resolved on read.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentations::Presentation;

/// Environment variable that overrides [`CongruenceLimits::max_states`].
pub const MAX_STATES_ENV: &str = "ORDMON_MAX_STATES";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CongruenceLimits {
    /// Cosets that may be defined in total (live or merged).
    pub max_states: usize,
    /// Definitions plus relation traces.
    pub max_steps: usize,
}

impl Default for CongruenceLimits {
    fn default() -> Self {
        CongruenceLimits {
            max_states: 2_000_000,
            max_steps: 50_000_000,
        }
    }
}

impl CongruenceLimits {
    pub fn new(max_states: usize, max_steps: usize) -> Result<Self> {
        if max_states == 0 || max_steps == 0 {
            return Err(Error::Validation(
                "congruence limits must be positive".into(),
            ));
        }
        Ok(CongruenceLimits {
            max_states,
            max_steps,
        })
    }

    /// Defaults, with `max_states` taken from `ORDMON_MAX_STATES` when set.
    pub fn from_env() -> Result<Self> {
        let mut limits = Self::default();
        if let Ok(raw) = std::env::var(MAX_STATES_ENV) {
            let value: usize = raw.trim().parse().map_err(|_| {
                Error::Validation(format!("{MAX_STATES_ENV}={raw} is not a positive integer"))
            })?;
            limits = Self::new(value, limits.max_steps)?;
        }
        Ok(limits)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Completed,
    Exhausted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Method {
    #[serde(rename = "coset-enumeration")]
    CosetEnumeration,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PresentedSizeResult {
    pub status: Status,
    pub size: Option<usize>,
    pub method: Method,
}

impl PresentedSizeResult {
    pub fn completed_size(&self) -> Option<usize> {
        match self.status {
            Status::Completed => self.size,
            Status::Exhausted => None,
        }
    }
}

const UNDEFINED: usize = usize::MAX;

struct Exhausted;

struct CosetTable<'a> {
    rows: Vec<Vec<usize>>,
    parent: Vec<usize>,
    relations: &'a [(Vec<usize>, Vec<usize>)],
    generators: usize,
    limits: CongruenceLimits,
    steps: usize,
}

impl CosetTable<'_> {
    fn find(&mut self, mut c: usize) -> usize {
        let mut root = c;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[c] != root {
            let next = self.parent[c];
            self.parent[c] = root;
            c = next;
        }
        root
    }

    fn tick(&mut self) -> Result<(), Exhausted> {
        self.steps += 1;
        if self.steps > self.limits.max_steps {
            Err(Exhausted)
        } else {
            Ok(())
        }
    }

    fn new_coset(&mut self) -> Result<usize, Exhausted> {
        if self.rows.len() >= self.limits.max_states {
            return Err(Exhausted);
        }
        self.tick()?;
        let c = self.rows.len();
        self.rows.push(vec![UNDEFINED; self.generators]);
        self.parent.push(c);
        Ok(c)
    }

    fn target(&mut self, c: usize, g: usize) -> Option<usize> {
        match self.rows[c][g] {
            UNDEFINED => None,
            t => Some(self.find(t)),
        }
    }

    fn target_or_define(&mut self, c: usize, g: usize) -> Result<usize, Exhausted> {
        match self.target(c, g) {
            Some(t) => Ok(t),
            None => {
                let t = self.new_coset()?;
                self.rows[c][g] = t;
                Ok(t)
            }
        }
    }

    fn follow_defining(&mut self, mut c: usize, word: &[usize]) -> Result<usize, Exhausted> {
        for &g in word {
            c = self.target_or_define(c, g)?;
        }
        Ok(c)
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = vec![(a, b)];
        while let Some((a, b)) = queue.pop() {
            let (a, b) = (self.find(a), self.find(b));
            if a == b {
                continue;
            }
            let (keep, kill) = (a.min(b), a.max(b));
            self.parent[kill] = keep;
            for g in 0..self.generators {
                let moved = self.rows[kill][g];
                if moved == UNDEFINED {
                    continue;
                }
                match self.rows[keep][g] {
                    UNDEFINED => self.rows[keep][g] = moved,
                    existing => queue.push((existing, moved)),
                }
            }
        }
    }

    /// Makes `c u = c v` hold, defining cosets along the way as needed.
    fn trace(&mut self, c: usize, u: &[usize], v: &[usize]) -> Result<(), Exhausted> {
        self.tick()?;
        match (u.split_last(), v.split_last()) {
            (None, None) => {}
            (None, Some((&last, init))) | (Some((&last, init)), None) => {
                let y = self.follow_defining(c, init)?;
                match self.target(y, last) {
                    Some(t) => self.coincidence(c, t),
                    None => self.rows[y][last] = c,
                }
            }
            (Some((&ul, ui)), Some((&vl, vi))) => {
                let x = self.follow_defining(c, ui)?;
                let y = self.follow_defining(c, vi)?;
                let x = self.find(x);
                match (self.target(x, ul), self.target(y, vl)) {
                    (Some(s), Some(t)) => self.coincidence(s, t),
                    (Some(s), None) => self.rows[y][vl] = s,
                    (None, Some(t)) => self.rows[x][ul] = t,
                    (None, None) => {
                        let z = self.new_coset()?;
                        self.rows[x][ul] = z;
                        // x and y may be the same coset with ul == vl.
                        if self.rows[y][vl] == UNDEFINED {
                            self.rows[y][vl] = z;
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn enumerate(&mut self) -> Result<(), Exhausted> {
        let mut c = 0;
        while c < self.rows.len() {
            if self.find(c) == c {
                for k in 0..self.relations.len() {
                    if self.find(c) != c {
                        break;
                    }
                    let (u, v) = &self.relations[k];
                    self.trace(c, u, v)?;
                }
                if self.find(c) == c {
                    for g in 0..self.generators {
                        self.target_or_define(c, g)?;
                    }
                }
            }
            c += 1;
        }
        Ok(())
    }

    /// Whether every live coset has a complete row and satisfies every relation.
    fn consistent(&mut self) -> bool {
        for c in 0..self.rows.len() {
            if self.find(c) != c {
                continue;
            }
            if self.rows[c].contains(&UNDEFINED) {
                return false;
            }
            for k in 0..self.relations.len() {
                let (u, v) = &self.relations[k];
                let mut x = c;
                for &g in u {
                    x = self.find(self.rows[x][g]);
                }
                let mut y = c;
                for &g in v {
                    y = self.find(self.rows[y][g]);
                }
                if x != y {
                    self.coincidence(x, y);
                    return false;
                }
            }
        }
        true
    }

    fn live(&mut self) -> usize {
        (0..self.rows.len()).filter(|&c| self.find(c) == c).count()
    }
}

/// Exact size of the monoid presented by `p`, or `Exhausted` if the limits
/// are reached first.
pub fn presented_size(p: &Presentation, limits: CongruenceLimits) -> PresentedSizeResult {
    let alphabet = p.alphabet();
    let index = |w: &crate::words::Word| -> Vec<usize> {
        w.letters()
            .iter()
            .map(|l| {
                alphabet
                    .binary_search(l)
                    .expect("relation letters are in the alphabet")
            })
            .collect()
    };
    let relations: Vec<(Vec<usize>, Vec<usize>)> = p
        .relations()
        .iter()
        .map(|r| (index(&r.lhs), index(&r.rhs)))
        .collect();

    let mut table = CosetTable {
        rows: Vec::new(),
        parent: Vec::new(),
        relations: &relations,
        generators: alphabet.len(),
        limits,
        steps: 0,
    };
    let outcome = (|| {
        table.new_coset()?;
        loop {
            table.enumerate()?;
            if table.consistent() {
                return Ok(table.live());
            }
        }
    })();
    match outcome {
        Ok(size) => PresentedSizeResult {
            status: Status::Completed,
            size: Some(size),
            method: Method::CosetEnumeration,
        },
        Err(Exhausted) => PresentedSizeResult {
            status: Status::Exhausted,
            size: None,
            method: Method::CosetEnumeration,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain_maps::{ChainSize, Family};
    use crate::presentations::build_presentation;

    fn size(fam: Family, k: usize) -> PresentedSizeResult {
        let p = build_presentation(fam, ChainSize::new(k).unwrap()).unwrap();
        presented_size(&p, CongruenceLimits::default())
    }

    #[test]
    fn examples() {
        assert_eq!(size(Family::C, 4).completed_size(), Some(14));
        assert_eq!(size(Family::D, 3).completed_size(), Some(6));
        assert_eq!(size(Family::D, 1).completed_size(), Some(1));
        assert_eq!(size(Family::C, 4).method, Method::CosetEnumeration);
    }

    #[test]
    fn exhaustion_is_reported() {
        let p = build_presentation(Family::C, ChainSize::new(5).unwrap()).unwrap();
        let r = presented_size(&p, CongruenceLimits::new(10, 1_000_000).unwrap());
        assert_eq!(r.status, Status::Exhausted);
        assert_eq!(r.size, None);
        let r = presented_size(&p, CongruenceLimits::new(1_000_000, 5).unwrap());
        assert_eq!(r.status, Status::Exhausted);
    }

    #[test]
    fn free_and_small_presentations() {
        // <e : e e = e> has two elements; parsed from the export format.
        let n = ChainSize::new(2).unwrap();
        let p = Presentation::parse_export("x: e[1] e[1] = e[1]", Family::C, n).unwrap();
        assert_eq!(
            presented_size(&p, CongruenceLimits::default()).completed_size(),
            Some(2)
        );
        // <e : e = 1> is trivial.
        let p = Presentation::parse_export("x: e[1] = 1", Family::C, n).unwrap();
        assert_eq!(
            presented_size(&p, CongruenceLimits::default()).completed_size(),
            Some(1)
        );
        // <e : e^3 = e> has three elements: 1, e, e^2.
        let p = Presentation::parse_export("x: e[1] e[1] e[1] = e[1]", Family::C, n).unwrap();
        assert_eq!(
            presented_size(&p, CongruenceLimits::default()).completed_size(),
            Some(3)
        );
    }

    #[test]
    fn json_shape() {
        let text = serde_json::to_string(&size(Family::C, 3)).unwrap();
        assert_eq!(
            text,
            r#"{"status":"completed","size":5,"method":"coset-enumeration"}"#
        );
    }
}
