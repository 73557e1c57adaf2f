//! Permutations of amplitude indices and search strategies for maximizing a
//! bound over them.
//!
//! The exhaustive searcher iterates permutation tuples in lexicographic
//! order and keeps the first maximizer (updates only on a strict
//! improvement), so the reported argmax is the lexicographically smallest
//! one. The sampled searcher draws uniform tuples from a seeded generator,
//! always includes the identity tuple, and hill-climbs each candidate by
//! adjacent transpositions until no single swap improves it.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// A permutation of {0, …, n−1}, stored as the image sequence: applying it
/// to a vector x yields new[i] = x[perm[i]].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    /// Validate that `image` is a bijection on {0, …, n−1}.
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        let mut seen = vec![false; n];
        for &v in &image {
            if v >= n {
                return Err(Error::IndexOutOfRange {
                    name: "permutation image",
                    value: v,
                    len: n,
                });
            }
            if seen[v] {
                return Err(Error::IndexOutOfRange {
                    name: "repeated permutation image",
                    value: v,
                    len: n,
                });
            }
            seen[v] = true;
        }
        Ok(Self { image })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Advance to the next permutation in lexicographic order; false once
    /// the sequence wraps past the last one.
    fn lex_next(&mut self) -> bool {
        let a = &mut self.image;
        let n = a.len();
        if n < 2 {
            return false;
        }
        let mut i = n - 1;
        while i > 0 && a[i - 1] >= a[i] {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        let mut j = n - 1;
        while a[j] <= a[i - 1] {
            j -= 1;
        }
        a.swap(i - 1, j);
        a[i..].reverse();
        true
    }
}

/// How to search the permutation space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Enumerate every tuple. Errors if the space exceeds the cap.
    Exhaustive,
    /// Draw `samples` seeded tuples (plus the identity) and hill-climb each.
    Sampled { seed: u64, samples: usize },
}

/// Hard cap on the number of tuples an exhaustive search may visit.
pub const EXHAUSTIVE_CAP: u128 = 10_000_000;

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Outcome of a permutation search over k-tuples.
#[derive(Debug, Clone)]
pub struct PermSearchResult<T> {
    /// Best value found.
    pub value: T,
    /// The maximizing tuple. Under the exhaustive strategy this is the
    /// lexicographically smallest maximizer.
    pub argmax: Vec<Permutation>,
    /// Tuples evaluated (hill-climbing steps included).
    pub evaluated: u64,
}

/// Maximize `f` over all k-tuples of permutations of {0,…,n−1} by full
/// enumeration. `f` returns an error only on internal misuse, so it is
/// propagated.
pub fn exhaustive_max<T, F>(n: usize, k: usize, mut f: F) -> Result<PermSearchResult<T>>
where
    T: Real,
    F: FnMut(&[Permutation]) -> Result<T>,
{
    if n == 0 || k == 0 {
        return Err(Error::Empty);
    }
    let space = factorial(n).checked_pow(k as u32).unwrap_or(u128::MAX);
    if space > EXHAUSTIVE_CAP {
        return Err(Error::SearchSpaceTooLarge {
            size: space,
            cap: EXHAUSTIVE_CAP,
        });
    }
    let mut tuple: Vec<Permutation> = (0..k)
        .map(|_| Permutation::identity(n))
        .collect::<Result<_>>()?;
    let mut best_value = f(&tuple)?;
    let mut best_tuple = tuple.clone();
    let mut evaluated = 1u64;

    // Odometer over the k slots, each cycling through n! permutations in
    // lexicographic order.
    loop {
        let mut slot = k;
        loop {
            if slot == 0 {
                return Ok(PermSearchResult {
                    value: best_value,
                    argmax: best_tuple,
                    evaluated,
                });
            }
            slot -= 1;
            if tuple[slot].lex_next() {
                break;
            }
            tuple[slot] = Permutation::identity(n)?;
        }
        let value = f(&tuple)?;
        evaluated += 1;
        if value > best_value {
            best_value = value;
            best_tuple = tuple.clone();
        }
    }
}

/// Maximize `f` over k-tuples by seeded sampling plus adjacent-transposition
/// hill climbing. Deterministic for a fixed seed. The identity tuple is
/// always among the candidates, so the result is never below the unpermuted
/// value.
pub fn sampled_max<T, F>(
    n: usize,
    k: usize,
    seed: u64,
    samples: usize,
    mut f: F,
) -> Result<PermSearchResult<T>>
where
    T: Real,
    F: FnMut(&[Permutation]) -> Result<T>,
{
    if n == 0 || k == 0 {
        return Err(Error::Empty);
    }
    if samples == 0 {
        return Err(Error::NoSamples);
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut evaluated = 0u64;

    let climb = |start: Vec<Permutation>,
                 f: &mut F,
                 evaluated: &mut u64|
     -> Result<(T, Vec<Permutation>)> {
        let mut tuple = start;
        let mut value = f(&tuple)?;
        *evaluated += 1;
        loop {
            let mut improved = false;
            for slot in 0..k {
                for i in 0..n.saturating_sub(1) {
                    tuple[slot].image.swap(i, i + 1);
                    let candidate = f(&tuple)?;
                    *evaluated += 1;
                    if candidate > value {
                        value = candidate;
                        improved = true;
                    } else {
                        tuple[slot].image.swap(i, i + 1);
                    }
                }
            }
            if !improved {
                return Ok((value, tuple));
            }
        }
    };

    let identity: Vec<Permutation> = (0..k)
        .map(|_| Permutation::identity(n))
        .collect::<Result<_>>()?;
    let (mut best_value, mut best_tuple) = climb(identity, &mut f, &mut evaluated)?;

    for _ in 0..samples {
        let tuple: Vec<Permutation> = (0..k)
            .map(|_| {
                let mut image: Vec<usize> = (0..n).collect();
                image.shuffle(&mut rng);
                Permutation::new(image)
            })
            .collect::<Result<_>>()?;
        let (value, tuple) = climb(tuple, &mut f, &mut evaluated)?;
        if value > best_value {
            best_value = value;
            best_tuple = tuple;
        }
    }

    Ok(PermSearchResult {
        value: best_value,
        argmax: best_tuple,
        evaluated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_validates() {
        assert!(Permutation::new(vec![2, 0, 1]).is_ok());
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
        assert!(Permutation::new(vec![0, 3, 1]).is_err());
        assert!(Permutation::new(vec![]).is_err());
        assert!(Permutation::identity(3).unwrap().is_identity());
    }

    #[test]
    fn lex_next_walks_all_orderings() {
        let mut p = Permutation::identity(3).unwrap();
        let mut seen = vec![p.image().to_vec()];
        while p.lex_next() {
            seen.push(p.image().to_vec());
        }
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[0], vec![0, 1, 2]);
        assert_eq!(seen[5], vec![2, 1, 0]);
    }

    #[test]
    fn exhaustive_finds_known_max_and_lex_smallest_argmax() {
        // Score favors tuple (π) with π mapping 0→2; many tie below.
        let weights = [1.0, 1.0, 5.0];
        let res = exhaustive_max(3, 1, |t| Ok(weights[t[0].image()[0]])).unwrap();
        assert_eq!(res.value, 5.0);
        assert_eq!(res.argmax[0].image(), &[2, 0, 1]);
        assert_eq!(res.evaluated, 6);
    }

    #[test]
    fn exhaustive_caps_the_space() {
        let err = exhaustive_max(16, 3, |_: &[Permutation]| Ok(0.0f64)).unwrap_err();
        assert!(matches!(err, Error::SearchSpaceTooLarge { .. }));
    }

    #[test]
    fn sampled_is_deterministic_and_at_least_identity() {
        let score = |t: &[Permutation]| {
            let s: usize = t[0].image().iter().enumerate().map(|(i, &v)| i * v).sum();
            Ok(s as f64)
        };
        let a = sampled_max(4, 1, 7, 20, score).unwrap();
        let b = sampled_max(4, 1, 7, 20, score).unwrap();
        assert_eq!(a.value, b.value);
        assert_eq!(a.argmax, b.argmax);
        let identity_score = score(&[Permutation::identity(4).unwrap()]).unwrap();
        assert!(a.value >= identity_score);
        // Identity already maximizes Σ i·π(i); the climb must find that.
        assert_eq!(a.value, identity_score);
    }
}
