//! Permutations of `{1, ..., n}` stored as image tables.
//!
//! Composition is read left to right everywhere in this crate:
//! `(a * b)(i) = b(a(i))`. Points are 1-based in all text formats and 0-based
//! internally.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};

/// A permutation of fixed degree, stored as its image table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    /// The identity on `degree` points. `degree` must be at least 1.
    #[must_use]
    pub fn identity(degree: usize) -> Self {
        assert!(degree >= 1, "degree must be positive");
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from a 0-based image table, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        if images.is_empty() {
            return Err(Error::InvalidTable {
                message: "empty image table".into(),
            });
        }
        let n = images.len() as u32;
        let mut seen = vec![false; images.len()];
        for &img in &images {
            if img >= n {
                return Err(Error::PointOutOfRange {
                    point: img + 1,
                    degree: n,
                });
            }
            if seen[img as usize] {
                return Err(Error::RepeatedPoint { point: img + 1 });
            }
            seen[img as usize] = true;
        }
        Ok(Permutation { images })
    }

    #[must_use]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a 0-based point.
    #[inline]
    #[must_use]
    pub fn image(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    #[must_use]
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[must_use]
    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| i as u32 == img)
    }

    /// Left-to-right composition: the result maps `i` to `other(self(i))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.mul(other))
    }

    /// Unchecked left-to-right composition for internal hot paths.
    #[inline]
    #[must_use]
    pub(crate) fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&i| other.images[i as usize]).collect(),
        }
    }

    #[must_use]
    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &img) in self.images.iter().enumerate() {
            inv[img as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `g^-1 * self * g`, the conjugate of `self` by `g`.
    #[must_use]
    pub fn conjugate_by(&self, g: &Self) -> Self {
        g.inverse().mul(self).mul(g)
    }

    /// `[a, b] = a^-1 b^-1 a b` with left-to-right composition.
    #[must_use]
    pub fn commutator(a: &Self, b: &Self) -> Self {
        a.inverse().mul(&b.inverse()).mul(a).mul(b)
    }

    /// Multiplicative order, exact.
    #[must_use]
    pub fn order(&self) -> BigUint {
        let mut ord = BigUint::one();
        for cycle in self.raw_cycles() {
            ord = ord.lcm(&BigUint::from(cycle.len()));
        }
        ord
    }

    /// `self^e` for arbitrary-precision `e`, via per-cycle rotation.
    #[must_use]
    pub fn pow(&self, e: &BigUint) -> Self {
        let mut images: Vec<u32> = (0..self.images.len() as u32).collect();
        for cycle in self.raw_cycles() {
            let len = BigUint::from(cycle.len());
            let shift_big = e % &len;
            let shift = shift_big.to_u64_digits().first().copied().unwrap_or(0) as usize;
            for (idx, &pt) in cycle.iter().enumerate() {
                images[pt as usize] = cycle[(idx + shift) % cycle.len()];
            }
        }
        Permutation { images }
    }

    /// 0-based points moved by this permutation, ascending.
    pub fn moved_points(&self) -> impl Iterator<Item = u32> + '_ {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &img)| *i as u32 != img)
            .map(|(i, _)| i as u32)
    }

    #[must_use]
    pub fn smallest_moved_point(&self) -> Option<u32> {
        self.moved_points().next()
    }

    /// Nontrivial cycles, 0-based, each starting at its smallest point,
    /// ordered by that point.
    fn raw_cycles(&self) -> Vec<Vec<u32>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n as u32 {
            if seen[start as usize] || self.images[start as usize] == start {
                seen[start as usize] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p as usize] {
                seen[p as usize] = true;
                cycle.push(p);
                p = self.images[p as usize];
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Nontrivial cycles in 1-based disjoint-cycle form.
    #[must_use]
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        self.raw_cycles()
            .into_iter()
            .map(|c| c.into_iter().map(|p| p + 1).collect())
            .collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses one permutation in 1-based disjoint-cycle notation.
///
/// Accepts `()` for the identity and juxtaposed cycles like `(1,2)(3,4)`.
/// Cycles must be disjoint; a repeated point is an error, as is any point
/// outside `1..=degree`.
pub fn parse_permutation(text: &str, degree: usize) -> Result<Permutation> {
    let trimmed_start = text.len() - text.trim_start().len();
    let body = text.trim();
    if body.is_empty() {
        return Err(Error::Parse {
            offset: trimmed_start,
            message: "expected a cycle, found nothing".into(),
        });
    }
    let mut images: Vec<u32> = (0..degree as u32).collect();
    let mut used = vec![false; degree];
    let bytes = body.as_bytes();
    let mut i = 0usize;
    while i < bytes.len() {
        if bytes[i] != b'(' {
            return Err(Error::Parse {
                offset: trimmed_start + i,
                message: format!("expected '(', found {:?}", bytes[i] as char),
            });
        }
        i += 1;
        let mut cycle: Vec<u32> = Vec::new();
        loop {
            while i < bytes.len() && (bytes[i] as char).is_whitespace() {
                i += 1;
            }
            if i >= bytes.len() {
                return Err(Error::Parse {
                    offset: trimmed_start + i,
                    message: "unterminated cycle".into(),
                });
            }
            if bytes[i] == b')' {
                i += 1;
                break;
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if i == start {
                return Err(Error::Parse {
                    offset: trimmed_start + i,
                    message: format!("expected a point, found {:?}", bytes[i] as char),
                });
            }
            let point: u64 = body[start..i].parse().map_err(|_| Error::Parse {
                offset: trimmed_start + start,
                message: "point does not fit in an integer".into(),
            })?;
            if point == 0 || point > degree as u64 {
                return Err(Error::PointOutOfRange {
                    point: point.min(u64::from(u32::MAX)) as u32,
                    degree: degree as u32,
                });
            }
            let p0 = (point - 1) as u32;
            if used[p0 as usize] {
                return Err(Error::RepeatedPoint { point: point as u32 });
            }
            used[p0 as usize] = true;
            cycle.push(p0);
            while i < bytes.len() && (bytes[i] as char).is_whitespace() {
                i += 1;
            }
            if i < bytes.len() && bytes[i] == b',' {
                i += 1;
            }
        }
        if cycle.len() == 1 {
            return Err(Error::Parse {
                offset: trimmed_start + i,
                message: "a cycle needs at least two points".into(),
            });
        }
        for w in 0..cycle.len() {
            images[cycle[w] as usize] = cycle[(w + 1) % cycle.len()];
        }
        while i < bytes.len() && (bytes[i] as char).is_whitespace() {
            i += 1;
        }
    }
    Permutation::from_images(images)
}

/// Splits a whitespace-separated generator list and parses each entry.
///
/// Juxtaposed cycles with no intervening whitespace belong to one generator.
pub fn parse_generator_list(text: &str, degree: usize) -> Result<Vec<Permutation>> {
    let mut gens = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0usize;
    while i < bytes.len() {
        while i < bytes.len() && (bytes[i] as char).is_whitespace() {
            i += 1;
        }
        if i >= bytes.len() {
            break;
        }
        if bytes[i] != b'(' {
            return Err(Error::Parse {
                offset: i,
                message: format!("expected '(', found {:?}", bytes[i] as char),
            });
        }
        let start = i;
        // One generator: a maximal run of balanced groups without whitespace
        // between a ')' and the next '('.
        let mut depth = 0usize;
        while i < bytes.len() {
            match bytes[i] {
                b'(' => depth += 1,
                b')' => {
                    depth = depth.checked_sub(1).ok_or(Error::Parse {
                        offset: i,
                        message: "unbalanced ')'".into(),
                    })?;
                    if depth == 0 && (i + 1 >= bytes.len() || bytes[i + 1] != b'(') {
                        i += 1;
                        break;
                    }
                }
                _ => {}
            }
            i += 1;
        }
        if depth != 0 {
            return Err(Error::Parse {
                offset: i,
                message: "unterminated cycle".into(),
            });
        }
        gens.push(parse_permutation(&text[start..i], degree)?);
    }
    if gens.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    Ok(gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(text: &str, degree: usize) -> Permutation {
        parse_permutation(text, degree).unwrap()
    }

    /// Independent composition oracle: walks both image tables directly.
    fn compose_oracle(a: &Permutation, b: &Permutation) -> Vec<u32> {
        (0..a.degree() as u32).map(|i| b.image(a.image(i))).collect()
    }

    #[test]
    fn composition_is_left_to_right() {
        let a = perm("(1,2)", 3);
        let b = perm("(2,3)", 3);
        let c = a.compose(&b).unwrap();
        // 1 -> 2 -> 3, so the product is the 3-cycle (1,3,2).
        assert_eq!(c, perm("(1,3,2)", 3));
        assert_eq!(c.images(), compose_oracle(&a, &b).as_slice());
    }

    #[test]
    fn three_cycle_squares() {
        let a = perm("(1,2,3)", 3);
        let sq = a.compose(&a).unwrap();
        assert_eq!(sq, perm("(1,3,2)", 3));
    }

    #[test]
    fn identity_composes_neutrally() {
        let id = Permutation::identity(5);
        let a = perm("(1,4)(2,5,3)", 5);
        assert_eq!(id.compose(&a).unwrap(), a);
        assert_eq!(a.compose(&id).unwrap(), a);
    }

    #[test]
    fn compose_rejects_degree_mismatch() {
        let a = perm("(1,2)", 2);
        let b = perm("(1,2)", 3);
        assert!(matches!(
            a.compose(&b),
            Err(Error::DegreeMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn inverse_round_trips() {
        let a = perm("(1,2,3,4,5)(6,7)", 8);
        assert!(a.compose(&a.inverse()).unwrap().is_identity());
        assert!(a.inverse().compose(&a).unwrap().is_identity());
    }

    #[test]
    fn order_is_lcm_of_cycle_lengths() {
        let a = perm("(1,2,3)(4,5)", 5);
        assert_eq!(a.order(), BigUint::from(6u32));
        assert_eq!(Permutation::identity(4).order(), BigUint::one());
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let a = perm("(1,2,3,4,5,6,7)(8,9)", 9);
        let mut acc = Permutation::identity(9);
        for e in 0u32..20 {
            assert_eq!(a.pow(&BigUint::from(e)), acc, "exponent {e}");
            acc = acc.mul(&a);
        }
    }

    #[test]
    fn parse_accepts_identity_token() {
        assert!(perm("()", 6).is_identity());
    }

    #[test]
    fn parse_multi_cycle_generator() {
        let a = perm("(1,2)(3,4)", 4);
        assert_eq!(a.image(0), 1);
        assert_eq!(a.image(2), 3);
    }

    #[test]
    fn parse_rejects_repeated_point() {
        assert!(matches!(
            parse_permutation("(1,2)(2,3)", 4),
            Err(Error::RepeatedPoint { point: 2 })
        ));
    }

    #[test]
    fn parse_rejects_out_of_range_point() {
        assert!(matches!(
            parse_permutation("(1,9)", 4),
            Err(Error::PointOutOfRange { point: 9, degree: 4 })
        ));
    }

    #[test]
    fn parse_rejects_malformed_input() {
        assert!(parse_permutation("(1,2", 4).is_err());
        assert!(parse_permutation("1,2)", 4).is_err());
        assert!(parse_permutation("(1)", 4).is_err());
    }

    #[test]
    fn generator_list_splits_on_whitespace_only() {
        let gens = parse_generator_list("(1,2)(3,4) (1,3)", 4).unwrap();
        assert_eq!(gens.len(), 2);
        assert_eq!(gens[0], perm("(1,2)(3,4)", 4));
        assert_eq!(gens[1], perm("(1,3)", 4));
    }

    #[test]
    fn display_round_trips() {
        for text in ["()", "(1,2)", "(1,2,3)(4,5)", "(2,4)(3,6,5)"] {
            let p = perm(text, 6);
            let shown = p.to_string();
            assert_eq!(parse_permutation(&shown, 6).unwrap(), p);
        }
    }

    #[test]
    fn commutator_convention() {
        let a = perm("(1,2)", 3);
        let b = perm("(2,3)", 3);
        let c = Permutation::commutator(&a, &b);
        let expect = a
            .inverse()
            .mul(&b.inverse())
            .mul(&a)
            .mul(&b);
        assert_eq!(c, expect);
        assert!(!c.is_identity());
    }

    #[test]
    fn group_axioms_on_randomized_triples() {
        // Deterministic xorshift; 10,000 triples of degree-9 permutations.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let random_perm = |next: &mut dyn FnMut() -> u64| {
            let mut images: Vec<u32> = (0..9).collect();
            for i in (1..images.len()).rev() {
                let j = (next() % (i as u64 + 1)) as usize;
                images.swap(i, j);
            }
            Permutation::from_images(images).unwrap()
        };
        for _ in 0..10_000 {
            let a = random_perm(&mut next);
            let b = random_perm(&mut next);
            let c = random_perm(&mut next);
            let ab_c = a.mul(&b).mul(&c);
            let a_bc = a.mul(&b.mul(&c));
            assert_eq!(ab_c, a_bc);
            assert!(a.mul(&a.inverse()).is_identity());
            let id = Permutation::identity(9);
            assert_eq!(a.mul(&id), a);
            assert_eq!(id.mul(&a), a);
        }
    }
}
