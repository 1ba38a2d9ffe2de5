//! Finitely generated permutation groups backed by a stabilizer chain.

use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::BigCount;
use crate::chain::StabilizerChain;
use crate::error::{Error, Result};
use crate::perm::{parse_generator_list, Permutation};
use crate::rng::SeedState;

/// A permutation group given by generators, with its stabilizer chain built
/// eagerly so order and membership queries are always available.
#[derive(Clone)]
pub struct GeneratedGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabilizerChain,
}

impl fmt::Debug for GeneratedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GeneratedGroup(degree {}, order {}, {} generators)",
            self.degree,
            self.chain.order(),
            self.generators.len()
        )
    }
}

impl GeneratedGroup {
    /// Builds a group from a non-empty generator list of a common degree.
    pub fn build(generators: Vec<Permutation>) -> Result<Self> {
        let first = generators.first().ok_or(Error::EmptyGenerators)?;
        let degree = first.degree();
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        Ok(Self::from_generators_unchecked(degree, generators))
    }

    /// Internal constructor: degrees already validated; an empty list gives
    /// the trivial group on `degree` points.
    pub(crate) fn from_generators_unchecked(
        degree: usize,
        mut generators: Vec<Permutation>,
    ) -> Self {
        if generators.is_empty() {
            generators.push(Permutation::identity(degree));
        }
        let chain = StabilizerChain::build(degree, &generators);
        GeneratedGroup {
            degree,
            generators,
            chain,
        }
    }

    #[must_use]
    pub fn trivial(degree: usize) -> Self {
        Self::from_generators_unchecked(degree, Vec::new())
    }

    #[must_use]
    pub fn degree(&self) -> usize {
        self.degree
    }

    #[must_use]
    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    #[must_use]
    pub fn order(&self) -> BigCount {
        self.chain.order().clone()
    }

    /// Group order as `u64`; `None` when it does not fit.
    #[must_use]
    pub fn order_u64(&self) -> Option<u64> {
        self.chain.order().to_u64()
    }

    #[must_use]
    pub fn is_trivial(&self) -> bool {
        self.chain.order().is_one()
    }

    #[must_use]
    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain.contains(g)
    }

    #[must_use]
    pub fn base(&self) -> Vec<u32> {
        self.chain.base()
    }

    #[must_use]
    pub fn strong_generators(&self) -> &[Permutation] {
        self.chain.strong_generators()
    }

    /// Uniformly random element, deterministic in the seed state.
    #[must_use]
    pub fn random_element(&self, rng: &mut SeedState) -> Permutation {
        self.chain.random_element(rng)
    }

    /// True when every generator of `self` lies in `other`.
    #[must_use]
    pub fn is_subgroup_of(&self, other: &GeneratedGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    /// Equality as subgroups of the same symmetric group.
    #[must_use]
    pub fn same_group(&self, other: &GeneratedGroup) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }

    /// Index of `sub` in `self`, which must contain it with finite index.
    pub fn index_of(&self, sub: &GeneratedGroup) -> Result<BigCount> {
        if !sub.is_subgroup_of(self) {
            return Err(Error::NotContained {
                context: "index computation",
            });
        }
        let (q, r) = self.order().div_rem(&sub.order());
        debug_assert!(r.is_zero(), "subgroup order must divide group order");
        Ok(q)
    }

    /// All elements, breadth-first over generator products, provided the
    /// order does not exceed `cap`. The result is sorted.
    pub fn elements(&self, cap: u64) -> Result<Vec<Permutation>> {
        let order = self.order();
        if order > BigCount::from(cap) {
            return Err(Error::CapExceeded {
                what: "element enumeration",
                value: order.to_u64().unwrap_or(u64::MAX),
                cap,
            });
        }
        let mut elems = vec![Permutation::identity(self.degree)];
        let mut seen: std::collections::HashSet<Permutation> =
            elems.iter().cloned().collect();
        let mut i = 0;
        while i < elems.len() {
            for g in &self.generators {
                let next = elems[i].mul(g);
                if seen.insert(next.clone()) {
                    elems.push(next);
                }
            }
            i += 1;
        }
        elems.sort_unstable();
        Ok(elems)
    }
}

/// Parses a one-line group description: `perm deg=<n> gens=<cycles...>`.
/// Generators are separated by whitespace; juxtaposed cycles with no space
/// between them belong to one generator.
pub fn parse_group_spec(line: &str) -> Result<GeneratedGroup> {
    let rest = line
        .trim()
        .strip_prefix("perm")
        .ok_or_else(|| parse_err(0, "expected line starting with 'perm'"))?;
    let rest = rest.trim_start();
    let rest = rest
        .strip_prefix("deg=")
        .ok_or_else(|| parse_err(0, "expected 'deg=<n>' after 'perm'"))?;
    let deg_end = rest
        .find(|c: char| c.is_whitespace())
        .ok_or_else(|| parse_err(0, "expected generators after degree"))?;
    let degree: usize = rest[..deg_end]
        .parse()
        .map_err(|_| parse_err(0, "degree must be a positive integer"))?;
    if degree == 0 {
        return Err(parse_err(0, "degree must be at least 1"));
    }
    let rest = rest[deg_end..].trim_start();
    let gens_text = rest
        .strip_prefix("gens=")
        .ok_or_else(|| parse_err(0, "expected 'gens=<cycles>'"))?;
    let generators = parse_generator_list(gens_text, degree)?;
    if generators.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    GeneratedGroup::build(generators)
}

/// Inverse of [`parse_group_spec`]: one line, parsable back to an equal group.
#[must_use]
pub fn format_group_spec(group: &GeneratedGroup) -> String {
    let gens: Vec<String> = group.generators().iter().map(|g| g.to_string()).collect();
    format!("perm deg={} gens={}", group.degree(), gens.join(" "))
}

fn parse_err(offset: usize, message: &str) -> Error {
    Error::Parse {
        offset,
        message: message.to_string(),
    }
}

/// Action of `group` on the right cosets of a normal subgroup: the quotient
/// as a permutation group on `[group : normal]` points, with coset of the
/// identity at index 0 and generator images matching `group.generators()`.
///
/// Cosets are recognized by an invariant signature (sorted images of every
/// `normal`-orbit) and confirmed by exact membership, so hash collisions
/// cannot merge distinct cosets.
pub fn coset_action(
    group: &GeneratedGroup,
    normal: &GeneratedGroup,
    max_index: u64,
) -> Result<GeneratedGroup> {
    if !normal.is_subgroup_of(group) {
        return Err(Error::NotContained {
            context: "coset action",
        });
    }
    for n in normal.generators() {
        for g in group.generators() {
            if !normal.contains(&n.conjugate_by(g)) {
                return Err(Error::NotNormal);
            }
        }
    }
    let index = group.index_of(normal)?;
    let index = index.to_u64().filter(|&i| i <= max_index).ok_or_else(|| {
        Error::CapExceeded {
            what: "coset index",
            value: index.to_u64().unwrap_or(u64::MAX),
            cap: max_index,
        }
    })? as usize;

    let degree = group.degree();
    let orbit_lists = point_orbits(degree, normal.generators());

    let signature = |g: &Permutation| -> Vec<u32> {
        let mut sig = Vec::with_capacity(degree + orbit_lists.len());
        for orbit in &orbit_lists {
            let mut images: Vec<u32> = orbit.iter().map(|&p| g.image(p)).collect();
            images.sort_unstable();
            sig.extend_from_slice(&images);
            sig.push(u32::MAX);
        }
        sig
    };

    let gens = group.generators();
    let mut reps: Vec<Permutation> = vec![Permutation::identity(degree)];
    let mut rep_inverses: Vec<Permutation> = vec![Permutation::identity(degree)];
    let mut buckets: HashMap<Vec<u32>, Vec<usize>> = HashMap::new();
    buckets.insert(signature(&reps[0]), vec![0]);
    let mut images: Vec<Vec<u32>> = vec![Vec::new(); gens.len()];

    let mut i = 0usize;
    while i < reps.len() {
        for (gi, s) in gens.iter().enumerate() {
            let t = reps[i].mul(s);
            let sig = signature(&t);
            let bucket = buckets.entry(sig).or_default();
            let mut found = None;
            for &idx in bucket.iter() {
                if normal.contains(&t.mul(&rep_inverses[idx])) {
                    found = Some(idx);
                    break;
                }
            }
            let target = match found {
                Some(idx) => idx,
                None => {
                    let idx = reps.len();
                    if idx >= index {
                        unreachable!("coset count exceeded the exact index");
                    }
                    bucket.push(idx);
                    rep_inverses.push(t.inverse());
                    reps.push(t);
                    idx
                }
            };
            images[gi].push(target as u32);
        }
        i += 1;
    }
    debug_assert_eq!(reps.len(), index, "coset enumeration must be exhaustive");

    let quotient_gens: Result<Vec<Permutation>> = images
        .into_iter()
        .map(|imgs| {
            debug_assert_eq!(imgs.len(), index);
            Permutation::from_images(imgs)
        })
        .collect();
    let quotient = GeneratedGroup::from_generators_unchecked(index.max(1), quotient_gens?);
    debug_assert_eq!(quotient.order(), BigCount::from(index));
    Ok(quotient)
}

/// Orbits of the point set under a generator list, each sorted, listed in
/// order of smallest member.
pub(crate) fn point_orbits(degree: usize, gens: &[Permutation]) -> Vec<Vec<u32>> {
    let mut seen = vec![false; degree];
    let mut orbits = Vec::new();
    for start in 0..degree as u32 {
        if seen[start as usize] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start as usize] = true;
        let mut i = 0;
        while i < orbit.len() {
            for g in gens {
                let y = g.image(orbit[i]);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    orbit.push(y);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    orbits
}
