//! Deterministic Schreier-Sims stabilizer chains.
//!
//! Base points are chosen as the smallest point moved by the generator that
//! forces a new level, so the same generator list always yields the same
//! base, the same strong generators, and the same transversals. Orbits are
//! extended append-only, which keeps coset representatives stable while the
//! chain is being completed.

use num_bigint::BigUint;
use num_traits::One;

use crate::perm::Permutation;
use crate::rng::SeedState;

const NONE: u32 = u32::MAX;

/// Degree threshold below which transversal elements are materialized.
/// Above it, only the Schreier parent vector is stored and representatives
/// are rebuilt by walking the orbit tree.
const EXPLICIT_REP_DEGREE: usize = 1024;

#[derive(Clone)]
struct Level {
    base: u32,
    /// Pool indices of strong generators fixing all earlier base points.
    gens: Vec<usize>,
    orbit: Vec<u32>,
    /// Point -> orbit position, `NONE` when outside the orbit.
    pos: Vec<u32>,
    /// Per orbit position: (predecessor point, pool generator index).
    parent: Vec<(u32, u32)>,
    /// Per orbit position: (rep, inverse rep), when materialized.
    reps: Option<Vec<(Permutation, Permutation)>>,
    /// Verified watermark: pairs (orbit pos < .0, gen pos < .1) are done.
    verified: (usize, usize),
}

impl Level {
    fn new(base: u32, degree: usize, explicit: bool) -> Self {
        let mut pos = vec![NONE; degree];
        pos[base as usize] = 0;
        let reps = explicit.then(|| {
            vec![(
                Permutation::identity(degree),
                Permutation::identity(degree),
            )]
        });
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            pos,
            parent: vec![(base, NONE)],
            reps,
            verified: (0, 0),
        }
    }
}

#[derive(Clone)]
pub struct StabilizerChain {
    degree: usize,
    pool: Vec<Permutation>,
    pool_inv: Vec<Permutation>,
    /// First base index each pool generator moves.
    pool_first_moved: Vec<usize>,
    levels: Vec<Level>,
    order: BigUint,
}

impl StabilizerChain {
    /// Builds the chain for the group generated by `gens` on `degree` points.
    /// Identity generators and exact duplicates are dropped first.
    #[must_use]
    pub fn build(degree: usize, gens: &[Permutation]) -> Self {
        let mut chain = StabilizerChain {
            degree,
            pool: Vec::new(),
            pool_inv: Vec::new(),
            pool_first_moved: Vec::new(),
            levels: Vec::new(),
            order: BigUint::one(),
        };
        let mut seen: Vec<&Permutation> = Vec::new();
        for g in gens {
            assert_eq!(g.degree(), degree, "mixed degrees in generator list");
            if g.is_identity() || seen.contains(&g) {
                continue;
            }
            seen.push(g);
            chain.add_pool_generator(g.clone());
        }
        chain.complete();
        chain.order = chain
            .levels
            .iter()
            .map(|l| BigUint::from(l.orbit.len()))
            .product();
        chain
    }

    #[must_use]
    pub fn order(&self) -> &BigUint {
        &self.order
    }

    #[must_use]
    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    #[must_use]
    pub fn strong_generators(&self) -> &[Permutation] {
        &self.pool
    }

    /// Membership by sifting.
    #[must_use]
    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (residue, level) = self.strip_from(g.clone(), 0);
        level == self.levels.len() && residue.is_identity()
    }

    /// Uniform random element: one transversal element per level.
    #[must_use]
    pub fn random_element(&self, rng: &mut SeedState) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for level_idx in (0..self.levels.len()).rev() {
            let level = &self.levels[level_idx];
            let point = level.orbit[rng.next_index(level.orbit.len())];
            g = g.mul(&self.rep(level_idx, point));
        }
        g
    }

    fn explicit(&self) -> bool {
        self.degree <= EXPLICIT_REP_DEGREE
    }

    /// Registers a new strong generator, creating a level if it fixes every
    /// current base point. Returns its first-moved level index.
    fn add_pool_generator(&mut self, g: Permutation) -> usize {
        debug_assert!(!g.is_identity());
        let mut first = None;
        for (i, level) in self.levels.iter().enumerate() {
            if g.image(level.base) != level.base {
                first = Some(i);
                break;
            }
        }
        let first = match first {
            Some(i) => i,
            None => {
                let base = g.smallest_moved_point().expect("non-identity");
                let explicit = self.explicit();
                self.levels.push(Level::new(base, self.degree, explicit));
                self.levels.len() - 1
            }
        };
        let idx = self.pool.len();
        self.pool_inv.push(g.inverse());
        self.pool.push(g);
        self.pool_first_moved.push(first);
        for level in self.levels[..=first].iter_mut() {
            level.gens.push(idx);
        }
        idx
    }

    /// Append-only orbit extension at one level.
    fn extend_orbit(&mut self, level_idx: usize) {
        let mut i = 0usize;
        while i < self.levels[level_idx].orbit.len() {
            let x = self.levels[level_idx].orbit[i];
            for gpos in 0..self.levels[level_idx].gens.len() {
                let gen_idx = self.levels[level_idx].gens[gpos];
                let y = self.pool[gen_idx].image(x);
                if self.levels[level_idx].pos[y as usize] != NONE {
                    continue;
                }
                let new_rep = self.levels[level_idx].reps.is_some().then(|| {
                    let reps = self.levels[level_idx].reps.as_ref().expect("explicit");
                    let (rx, rx_inv) = &reps[i];
                    (
                        rx.mul(&self.pool[gen_idx]),
                        self.pool_inv[gen_idx].mul(rx_inv),
                    )
                });
                let level = &mut self.levels[level_idx];
                level.pos[y as usize] = level.orbit.len() as u32;
                level.orbit.push(y);
                level.parent.push((x, gen_idx as u32));
                if let (Some(reps), Some(pair)) = (level.reps.as_mut(), new_rep) {
                    reps.push(pair);
                }
            }
            i += 1;
        }
    }

    /// Transversal representative mapping the level base to `point`.
    fn rep(&self, level_idx: usize, point: u32) -> Permutation {
        let level = &self.levels[level_idx];
        let p = level.pos[point as usize];
        debug_assert_ne!(p, NONE);
        if let Some(reps) = &level.reps {
            return reps[p as usize].0.clone();
        }
        let mut path = Vec::new();
        let mut cur = point;
        while cur != level.base {
            let (prev, gen) = level.parent[level.pos[cur as usize] as usize];
            path.push(gen as usize);
            cur = prev;
        }
        let mut u = Permutation::identity(self.degree);
        for &gen in path.iter().rev() {
            u = u.mul(&self.pool[gen]);
        }
        u
    }

    /// Multiplies `h` by the inverse representative for `point` at one level.
    fn apply_rep_inverse(&self, level_idx: usize, point: u32, h: Permutation) -> Permutation {
        let level = &self.levels[level_idx];
        let p = level.pos[point as usize];
        debug_assert_ne!(p, NONE);
        if let Some(reps) = &level.reps {
            return h.mul(&reps[p as usize].1);
        }
        let mut h = h;
        let mut cur = point;
        while cur != level.base {
            let (prev, gen) = level.parent[level.pos[cur as usize] as usize];
            h = h.mul(&self.pool_inv[gen as usize]);
            cur = prev;
        }
        h
    }

    /// Sifts `h` through levels `start..`, returning the residue and the
    /// first level where sifting stopped (`levels.len()` on a full pass).
    fn strip_from(&self, mut h: Permutation, start: usize) -> (Permutation, usize) {
        for level_idx in start..self.levels.len() {
            let x = h.image(self.levels[level_idx].base);
            if self.levels[level_idx].pos[x as usize] == NONE {
                return (h, level_idx);
            }
            h = self.apply_rep_inverse(level_idx, x, h);
        }
        (h, self.levels.len())
    }

    /// The deterministic Schreier-Sims completion loop. Verifies levels from
    /// the bottom up; a failed Schreier generator becomes a new strong
    /// generator and verification restarts at the level it reached.
    fn complete(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let li = i as usize;
            self.extend_orbit(li);
            let (done_o, done_g) = self.levels[li].verified;
            let mut restart: Option<usize> = None;
            'scan: for xi in 0..self.levels[li].orbit.len() {
                for gpos in 0..self.levels[li].gens.len() {
                    if xi < done_o && gpos < done_g {
                        continue;
                    }
                    let gen_idx = self.levels[li].gens[gpos];
                    let x = self.levels[li].orbit[xi];
                    let xs = self.pool[gen_idx].image(x);
                    debug_assert_ne!(self.levels[li].pos[xs as usize], NONE);
                    let schreier = {
                        let u = self.rep(li, x).mul(&self.pool[gen_idx]);
                        self.apply_rep_inverse(li, xs, u)
                    };
                    if schreier.is_identity() {
                        continue;
                    }
                    let (residue, reached) = self.strip_from(schreier, li + 1);
                    if residue.is_identity() {
                        continue;
                    }
                    if reached == self.levels.len() {
                        let base = residue.smallest_moved_point().expect("non-identity");
                        let explicit = self.explicit();
                        self.levels.push(Level::new(base, self.degree, explicit));
                    }
                    self.add_pool_generator(residue);
                    restart = Some(reached);
                    break 'scan;
                }
            }
            match restart {
                Some(level) => i = level as isize,
                None => {
                    let level = &mut self.levels[li];
                    level.verified = (level.orbit.len(), level.gens.len());
                    i -= 1;
                }
            }
        }
    }
}
