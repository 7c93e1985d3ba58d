//! The symmetry group acting on bongles and orbit-canonical enumeration.
//!
//! The group has order `8n`: cyclic rotation, reflection (reverse charm order,
//! flip every pattern), global inside/outside swap and global crossing reversal.
//! Charms are compared as tokens `O0 < O1 < I0 < I1`, i.e. by `Charm::rank`.

use serde::{Deserialize, Serialize};

use super::{Bongle, BongleError, Charm};

pub const DEFAULT_ENUMERATION_CAP: usize = 12;

/// Upper limit for any cap, set by the packed enumeration counter.
const HARD_CAP: usize = 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Symmetry {
    pub rotation: usize,
    pub reflect: bool,
    pub swap_sides: bool,
    pub flip_patterns: bool,
}

impl Symmetry {
    /// All `8n` group elements for bongles with `n` charms.
    pub fn all(n: usize) -> impl Iterator<Item = Symmetry> {
        (0..n).flat_map(move |rotation| {
            (0..8u8).map(move |bits| Symmetry {
                rotation,
                reflect: bits & 1 != 0,
                swap_sides: bits & 2 != 0,
                flip_patterns: bits & 4 != 0,
            })
        })
    }

    fn mask(&self) -> u8 {
        (self.swap_sides as u8) << 1 | (self.flip_patterns as u8)
    }

    /// Token at position `i` of the image of `tokens`.
    #[inline]
    fn token_at(&self, tokens: &[u8], i: usize) -> u8 {
        let n = tokens.len();
        let j = (i + self.rotation) % n;
        let t = if self.reflect { tokens[n - 1 - j] ^ 1 } else { tokens[j] };
        t ^ self.mask()
    }

    pub fn apply(&self, b: &Bongle) -> Bongle {
        let tokens = ranks(b);
        let charms = (0..tokens.len())
            .map(|i| Charm::from_rank(self.token_at(&tokens, i)))
            .collect();
        Bongle { charms }
    }
}

fn ranks(b: &Bongle) -> Vec<u8> {
    b.charms().iter().map(|c| c.rank()).collect()
}

/// True when no group element maps `tokens` to something lexicographically smaller.
fn is_canonical(tokens: &[u8]) -> bool {
    let n = tokens.len();
    for s in Symmetry::all(n) {
        for (i, &t0) in tokens.iter().enumerate() {
            let t = s.token_at(tokens, i);
            if t < t0 {
                return false;
            }
            if t > t0 {
                break;
            }
        }
    }
    true
}

/// Lexicographically smallest element of the orbit of `b`.
pub fn canonical_form(b: &Bongle) -> Bongle {
    let tokens = ranks(b);
    let n = tokens.len();
    let mut best = tokens.clone();
    let mut image = vec![0u8; n];
    for s in Symmetry::all(n) {
        for (i, slot) in image.iter_mut().enumerate() {
            *slot = s.token_at(&tokens, i);
        }
        if image < best {
            best.copy_from_slice(&image);
        }
    }
    Bongle {
        charms: best.into_iter().map(Charm::from_rank).collect(),
    }
}

pub fn are_equivalent(a: &Bongle, b: &Bongle) -> bool {
    a.len() == b.len() && canonical_form(a) == canonical_form(b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EnumerationFilter {
    All,
    Alternating,
    /// Alternating with exactly `n/2` innies.
    Balanced,
}

/// One canonical representative per equivalence class, in canonical order.
pub fn enumerate_bongles(n: usize, filter: EnumerationFilter) -> Result<Vec<Bongle>, BongleError> {
    enumerate_bongles_with_cap(n, filter, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_bongles_with_cap(
    n: usize,
    filter: EnumerationFilter,
    cap: usize,
) -> Result<Vec<Bongle>, BongleError> {
    if n < 2 {
        return Err(BongleError::TooShort(n));
    }
    let cap = cap.min(HARD_CAP);
    if n > cap {
        return Err(BongleError::CapExceeded { n, cap });
    }
    let mut out = Vec::new();
    let mut tokens = vec![0u8; n];
    // Every orbit contains an element starting with O0, so the first token is fixed.
    match filter {
        EnumerationFilter::All => {
            for code in 0u64..(1u64 << (2 * (n - 1))) {
                for (i, t) in tokens.iter_mut().enumerate().skip(1) {
                    *t = ((code >> (2 * (n - 1 - i))) & 3) as u8;
                }
                if is_canonical(&tokens) {
                    out.push(from_tokens(&tokens));
                }
            }
        }
        EnumerationFilter::Alternating | EnumerationFilter::Balanced => {
            let want_k = (filter == EnumerationFilter::Balanced).then_some(n / 2);
            if want_k.is_some() && n % 2 == 1 {
                return Ok(out);
            }
            for mask in 0u64..(1u64 << (n - 1)) {
                if let Some(k) = want_k {
                    if mask.count_ones() as usize != k {
                        continue;
                    }
                }
                for (i, t) in tokens.iter_mut().enumerate().skip(1) {
                    *t = (((mask >> (n - 1 - i)) & 1) as u8) << 1;
                }
                if is_canonical(&tokens) {
                    out.push(from_tokens(&tokens));
                }
            }
        }
    }
    Ok(out)
}

fn from_tokens(tokens: &[u8]) -> Bongle {
    Bongle {
        charms: tokens.iter().map(|&t| Charm::from_rank(t)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{BTreeSet, HashSet};

    fn b(s: &str) -> Bongle {
        s.parse().unwrap()
    }

    /// Closure of `{b}` under the four generators, built without the group table.
    fn orbit(b: &Bongle) -> HashSet<Vec<(u8, u8)>> {
        let start: Vec<(u8, u8)> = b.charms().iter().map(|c| (c.side as u8, c.pattern.digit())).collect();
        let mut seen = HashSet::new();
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            if !seen.insert(x.clone()) {
                continue;
            }
            let mut rot = x.clone();
            rot.rotate_left(1);
            let refl: Vec<_> = x.iter().rev().map(|&(s, p)| (s, 1 - p)).collect();
            let swap: Vec<_> = x.iter().map(|&(s, p)| (1 - s, p)).collect();
            let flip: Vec<_> = x.iter().map(|&(s, p)| (s, 1 - p)).collect();
            stack.extend([rot, refl, swap, flip]);
        }
        seen
    }

    fn brute_classes(n: usize, keep: impl Fn(&[(u8, u8)]) -> bool) -> usize {
        let mut classes: BTreeSet<Vec<(u8, u8)>> = BTreeSet::new();
        for code in 0u32..(1 << (2 * n)) {
            let x: Vec<(u8, u8)> = (0..n)
                .map(|i| (((code >> (2 * i)) & 2) as u8 >> 1, ((code >> (2 * i)) & 1) as u8))
                .collect();
            if !keep(&x) {
                continue;
            }
            let charms: String = x.iter().map(|&(s, p)| format!("{}{} ", if s == 0 { 'O' } else { 'I' }, p)).collect();
            let orb = orbit(&charms.parse().unwrap());
            classes.insert(orb.into_iter().min().unwrap());
        }
        classes.len()
    }

    #[test]
    fn group_order() {
        assert_eq!(Symmetry::all(5).count(), 40);
        let x = b("O0 O1 I0 I1 O0");
        let images: HashSet<Bongle> = Symmetry::all(5).map(|s| s.apply(&x)).collect();
        let orb = orbit(&x);
        assert_eq!(images.len(), orb.len());
    }

    #[test]
    fn equivalence_examples() {
        assert!(are_equivalent(&b("O0 I0 O0 I0"), &b("I0 O0 I0 O0")));
        assert!(are_equivalent(&b("O0 O0 I0"), &b("I1 I1 O1")));
        assert!(!are_equivalent(&b("O0 O0 I0 I0"), &b("O0 I0 O0 I0")));
        assert!(!are_equivalent(&b("O0 O0 O0"), &b("O0 O0 O0 O0")));
    }

    #[test]
    fn canonical_is_orbit_minimum() {
        for s in ["O0 O1 I0 I1 O0", "I1 I1 O1", "O1 I0 I0 O1 I1 O0"] {
            let x = b(s);
            let c = canonical_form(&x);
            let orb = orbit(&x);
            let min = orb.iter().min().unwrap();
            let got: Vec<(u8, u8)> = c.charms().iter().map(|c| (c.side as u8, c.pattern.digit())).collect();
            assert_eq!(&got, min);
            assert_eq!(canonical_form(&c), c);
        }
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_bongles(2, EnumerationFilter::Alternating).unwrap().len(), 2);
        let three = enumerate_bongles(3, EnumerationFilter::Alternating).unwrap();
        assert_eq!(three, vec![b("O0 O0 O0"), b("O0 O0 I0")]);
        assert_eq!(enumerate_bongles(3, EnumerationFilter::Balanced).unwrap(), vec![]);
        assert!(matches!(
            enumerate_bongles(13, EnumerationFilter::All),
            Err(BongleError::CapExceeded { n: 13, cap: 12 })
        ));
        assert_eq!(enumerate_bongles(1, EnumerationFilter::All), Err(BongleError::TooShort(1)));
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for n in 2..=7 {
            let all = enumerate_bongles(n, EnumerationFilter::All).unwrap();
            assert_eq!(all.len(), brute_classes(n, |_| true), "all n={n}");
            let alt = enumerate_bongles(n, EnumerationFilter::Alternating).unwrap();
            let alt_brute = brute_classes(n, |x| x.iter().all(|c| c.1 == x[0].1));
            assert_eq!(alt.len(), alt_brute, "alternating n={n}");
            let bal = enumerate_bongles(n, EnumerationFilter::Balanced).unwrap();
            let bal_brute = brute_classes(n, |x| {
                x.iter().all(|c| c.1 == x[0].1) && 2 * x.iter().filter(|c| c.0 == 1).count() == n
            });
            assert_eq!(bal.len(), bal_brute, "balanced n={n}");
            let mut sorted = all.clone();
            sorted.sort_by_key(|x| x.charms().iter().map(|c| c.rank()).collect::<Vec<_>>());
            assert_eq!(sorted, all);
            for x in &all {
                assert_eq!(&canonical_form(x), x);
            }
        }
    }

    #[test]
    fn alternating_class_counts() {
        let expect = [2, 2, 4, 4, 8, 9, 18, 23, 44, 63, 122];
        for (n, &e) in (2..=12).zip(expect.iter()) {
            assert_eq!(enumerate_bongles(n, EnumerationFilter::Alternating).unwrap().len(), e, "n={n}");
        }
        let bal: Vec<usize> = [2, 4, 6, 8, 10, 12]
            .iter()
            .map(|&n| enumerate_bongles(n, EnumerationFilter::Balanced).unwrap().len())
            .collect();
        assert_eq!(bal, vec![1, 2, 3, 7, 13, 35]);
    }
}
