//! Brute-force enumeration of rooted 4-valent maps and their Eulerian
//! orientations.
//!
//! Vertex v owns darts 4v..4v+3 and σ rotates them counterclockwise:
//! σ(4v+j) = 4v + (j+1) mod 4. The root is dart 0. Maps are built by
//! canonical construction: darts are processed in label order and the
//! smallest unpaired dart is matched either to a later unpaired dart that
//! already exists or to dart 4v of a brand-new vertex v. Labels are then
//! the breadth-first discovery order from the root, so every rooted map
//! arises exactly once and no deduplication is needed.

use rayon::prelude::*;
use thiserror::Error;

use crate::coeffring::{GammaPoly, Rational};

/// Default vertex cap.
pub const DEFAULT_MAX_VERTICES: usize = 4;
/// Cap with the slow path enabled.
pub const SLOW_MAX_VERTICES: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("{n} vertices exceeds the cap of {cap} (enable the slow path to raise it to {SLOW_MAX_VERTICES})")]
    CapExceeded { n: usize, cap: usize },
    #[error("need at least one vertex")]
    Empty,
}

/// How far enumeration may go.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumLimits {
    pub max_vertices: usize,
}

impl Default for EnumLimits {
    fn default() -> Self {
        EnumLimits {
            max_vertices: DEFAULT_MAX_VERTICES,
        }
    }
}

impl EnumLimits {
    pub fn allow_slow() -> Self {
        EnumLimits {
            max_vertices: SLOW_MAX_VERTICES,
        }
    }

    fn check(&self, n: usize) -> Result<(), MapError> {
        if n == 0 {
            Err(MapError::Empty)
        } else if n > self.max_vertices {
            Err(MapError::CapExceeded {
                n,
                cap: self.max_vertices,
            })
        } else {
            Ok(())
        }
    }
}

/// A rooted 4-valent map on darts 0..4n; σ is implicit in the labelling.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DartMap {
    /// Edge involution.
    pub alpha: Vec<usize>,
}

impl DartMap {
    pub fn vertices(&self) -> usize {
        self.alpha.len() / 4
    }

    pub fn sigma(d: usize) -> usize {
        d - d % 4 + (d + 1) % 4
    }

    /// Number of cycles of σ∘α.
    pub fn faces(&self) -> usize {
        let mut seen = vec![false; self.alpha.len()];
        let mut count = 0;
        for start in 0..self.alpha.len() {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                d = DartMap::sigma(self.alpha[d]);
            }
        }
        count
    }

    /// g with V − E + F = 2 − 2g.
    pub fn genus(&self) -> usize {
        let v = self.vertices() as i64;
        let chi = v - 2 * v + self.faces() as i64;
        ((2 - chi) / 2) as usize
    }

    /// Whether σ and α generate a transitive group.
    pub fn is_connected(&self) -> bool {
        let n = self.alpha.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        while let Some(d) = stack.pop() {
            if std::mem::replace(&mut seen[d], true) {
                continue;
            }
            stack.push(self.alpha[d]);
            stack.push(DartMap::sigma(d));
        }
        seen.into_iter().all(|s| s)
    }

    /// Orientations counted by number of alternating vertices: entry a is
    /// the number of Eulerian orientations with the root dart outgoing and
    /// exactly a alternating vertices.
    pub fn orientation_profile(&self) -> Vec<u64> {
        let n = self.vertices();
        let edges: Vec<(usize, usize)> = (0..4 * n)
            .filter(|&d| d < self.alpha[d])
            .map(|d| (d, self.alpha[d]))
            .collect();
        let mut st = OrientState {
            out_dart: vec![false; 4 * n],
            outs: vec![0; n],
            ins: vec![0; n],
            profile: vec![0; n + 1],
        };
        st.orient(&edges);
        st.profile
    }
}

struct OrientState {
    out_dart: Vec<bool>,
    outs: Vec<u8>,
    ins: Vec<u8>,
    profile: Vec<u64>,
}

impl OrientState {
    fn orient(&mut self, edges: &[(usize, usize)]) {
        let Some((&(a, b), rest)) = edges.split_first() else {
            // every vertex now has two outgoing and two incoming darts
            let alternating = (0..self.outs.len())
                .filter(|&v| self.out_dart[4 * v] == self.out_dart[4 * v + 2])
                .count();
            self.profile[alternating] += 1;
            return;
        };
        for (tail, head) in [(a, b), (b, a)] {
            let (vt, vh) = (tail / 4, head / 4);
            if head == 0 || self.outs[vt] == 2 || self.ins[vh] == 2 {
                continue;
            }
            self.out_dart[tail] = true;
            self.outs[vt] += 1;
            self.ins[vh] += 1;
            self.orient(rest);
            self.out_dart[tail] = false;
            self.outs[vt] -= 1;
            self.ins[vh] -= 1;
        }
    }
}

fn build(n: usize, alpha: &mut Vec<Option<usize>>, created: usize, out: &mut Vec<DartMap>) {
    let Some(d) = (0..4 * created).find(|&d| alpha[d].is_none()) else {
        if created == n {
            out.push(DartMap {
                alpha: alpha.iter().map(|a| a.expect("complete")).collect(),
            });
        }
        return;
    };
    for e in d + 1..4 * created {
        if alpha[e].is_none() {
            alpha[d] = Some(e);
            alpha[e] = Some(d);
            build(n, alpha, created, out);
            alpha[d] = None;
            alpha[e] = None;
        }
    }
    if created < n {
        let e = 4 * created;
        alpha[d] = Some(e);
        alpha[e] = Some(d);
        build(n, alpha, created + 1, out);
        alpha[d] = None;
        alpha[e] = None;
    }
}

/// Every rooted connected 4-valent map with `n` vertices, of any genus.
pub fn all_quartic_maps(n: usize, limits: EnumLimits) -> Result<Vec<DartMap>, MapError> {
    limits.check(n)?;
    let mut alpha = vec![None; 4 * n];
    let mut out = Vec::new();
    build(n, &mut alpha, 1, &mut out);
    Ok(out)
}

/// Rooted 4-valent maps with `n` vertices on the surface of genus `genus`.
pub fn gen_quartic_maps(
    n: usize,
    genus: usize,
    limits: EnumLimits,
) -> Result<Vec<DartMap>, MapError> {
    Ok(all_quartic_maps(n, limits)?
        .into_iter()
        .filter(|m| m.genus() == genus)
        .collect())
}

/// 2·3ⁿ(2n)!/(n!(n+2)!), the number of rooted 4-valent planar maps.
pub fn planar_quartic_count(n: u32) -> u128 {
    let fact = |k: u32| (1..=k as u128).product::<u128>();
    2 * 3u128.pow(n) * fact(2 * n) / (fact(n) * fact(n + 2))
}

/// Σ over maps and Eulerian orientations (root dart outgoing) of
/// γ^{alternating vertices}.
pub fn count_eo_gamma(n: usize, genus: usize, limits: EnumLimits) -> Result<GammaPoly, MapError> {
    let maps = gen_quartic_maps(n, genus, limits)?;
    let profile = maps.par_iter().map(DartMap::orientation_profile).reduce(
        || vec![0u64; n + 1],
        |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        },
    );
    Ok(GammaPoly::new(
        profile
            .into_iter()
            .map(|c| Rational::from(c as i64))
            .collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn one_vertex_maps() {
        let all = all_quartic_maps(1, EnumLimits::default()).unwrap();
        assert_eq!(all.len(), 3);
        assert_eq!(
            gen_quartic_maps(1, 0, EnumLimits::default()).unwrap().len(),
            2
        );
        // the crossing pairing {0,2},{1,3}
        let torus = gen_quartic_maps(1, 1, EnumLimits::default()).unwrap();
        assert_eq!(
            torus,
            vec![DartMap {
                alpha: vec![2, 3, 0, 1]
            }]
        );
    }

    #[test]
    fn planar_counts_match_formula() {
        for n in 1..=4 {
            let maps = gen_quartic_maps(n, 0, EnumLimits::default()).unwrap();
            assert_eq!(
                maps.len() as u128,
                planar_quartic_count(n as u32),
                "n = {n}"
            );
        }
        assert_eq!(
            (1..=3).map(planar_quartic_count).collect::<Vec<_>>(),
            vec![2, 9, 54]
        );
    }

    #[test]
    fn one_vertex_orientations() {
        let p = count_eo_gamma(1, 0, EnumLimits::default()).unwrap();
        assert_eq!(p, GammaPoly::from_ints(&[2, 2]));
        assert_eq!(p.eval(&Rational::from(1)), Rational::from(4));
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(
            all_quartic_maps(5, EnumLimits::default()).unwrap_err(),
            MapError::CapExceeded { n: 5, cap: 4 }
        );
        assert_eq!(
            all_quartic_maps(0, EnumLimits::default()).unwrap_err(),
            MapError::Empty
        );
    }

    #[test]
    fn every_map_is_connected_and_distinct() {
        let maps = all_quartic_maps(3, EnumLimits::default()).unwrap();
        let set: std::collections::HashSet<_> = maps.iter().collect();
        assert_eq!(set.len(), maps.len());
        assert!(maps.iter().all(DartMap::is_connected));
    }

    fn brute_force_orientations(m: &DartMap) -> Vec<u64> {
        let n = m.vertices();
        let edges: Vec<(usize, usize)> = (0..4 * n)
            .filter(|&d| d < m.alpha[d])
            .map(|d| (d, m.alpha[d]))
            .collect();
        let mut profile = vec![0u64; n + 1];
        for mask in 0u32..(1 << edges.len()) {
            let mut out = vec![false; 4 * n];
            for (i, &(a, b)) in edges.iter().enumerate() {
                out[if mask >> i & 1 == 1 { a } else { b }] = true;
            }
            if !out[0] {
                continue;
            }
            let ok = (0..n).all(|v| (0..4).filter(|&j| out[4 * v + j]).count() == 2);
            if ok {
                let alt = (0..n).filter(|&v| out[4 * v] == out[4 * v + 2]).count();
                profile[alt] += 1;
            }
        }
        profile
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn backtracking_matches_exhaustive_search(n in 1usize..=3, pick in any::<prop::sample::Index>()) {
            let maps = all_quartic_maps(n, EnumLimits::default()).unwrap();
            let m = &maps[pick.index(maps.len())];
            prop_assert_eq!(m.orientation_profile(), brute_force_orientations(m));
        }
    }
}
