//! Isometry groups of vertex sets, computed as automorphisms of the
//! squared-distance matrix.
//!
//! Generators come from a backtracking search over images of a base of
//! vertices. Vertices are first colored by an equitable refinement of their
//! distance profiles; during the search candidates must agree in color and
//! in their distances to the already placed base images. Once every base
//! point has an image the whole permutation is forced, because the base
//! separates all vertices by their distances to it. The group order comes
//! from a Schreier–Sims stabilizer chain over the generators.

use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::constructions::DelaunayInstance;
use crate::error::{Error, Result};
use crate::exactlin::{QuadraticForm, RVector, Rational};

/// A permutation of `0..degree` in one-line notation: `i ↦ self[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self((0..degree as u32).collect())
    }

    /// Validates that `images` is a bijection of `0..images.len()`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n > u32::MAX as usize {
            return Err(Error::MalformedPermutation("degree too large".into()));
        }
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n {
                return Err(Error::MalformedPermutation(format!(
                    "image {i} out of range for degree {n}"
                )));
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::MalformedPermutation(format!("image {i} repeated")));
            }
        }
        Ok(Self(images.into_iter().map(|i| i as u32).collect()))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.0[point] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.0.iter().map(|&i| i as usize).collect()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        Self(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &p) in self.0.iter().enumerate() {
            inv[p as usize] = i as u32;
        }
        Self(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| i as u32 == p)
    }

    fn first_moved(&self) -> Option<usize> {
        self.0.iter().enumerate().position(|(i, &p)| i as u32 != p)
    }
}

struct ChainLevel {
    base: usize,
    generators: Vec<Permutation>,
    orbit: Vec<usize>,
    /// `transversal[p] = u` with `u(base) = p`, paired with `u⁻¹`.
    transversal: Vec<Option<(Permutation, Permutation)>>,
}

/// Base and strong generating set built by the deterministic
/// Schreier–Sims algorithm.
pub struct StabilizerChain {
    degree: usize,
    levels: Vec<ChainLevel>,
}

impl StabilizerChain {
    pub fn new(degree: usize, generators: &[Permutation]) -> Result<Self> {
        let mut chain = Self {
            degree,
            levels: Vec::new(),
        };
        for g in generators {
            if g.degree() != degree {
                return Err(Error::MalformedPermutation(format!(
                    "generator of degree {} in a group of degree {degree}",
                    g.degree()
                )));
            }
            chain.add(0, g.clone());
        }
        Ok(chain)
    }

    /// Residue of `g` after stripping through levels `from..`; the
    /// residue is the identity exactly when `g` belongs to the group.
    fn strip(&self, g: &Permutation, from: usize) -> Permutation {
        let mut h = g.clone();
        for level in &self.levels[from..] {
            let p = h.apply(level.base);
            match &level.transversal[p] {
                Some((_, u_inv)) => h = u_inv.compose(&h),
                None => return h,
            }
        }
        h
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.strip(g, 0).is_identity()
    }

    fn add(&mut self, level: usize, g: Permutation) {
        if self.strip(&g, level).is_identity() {
            return;
        }
        if level == self.levels.len() {
            let base = g
                .first_moved()
                .expect("non-identity permutation moves a point");
            let mut transversal = vec![None; self.degree];
            let id = Permutation::identity(self.degree);
            transversal[base] = Some((id.clone(), id));
            self.levels.push(ChainLevel {
                base,
                generators: Vec::new(),
                orbit: vec![base],
                transversal,
            });
        }

        let old_orbit_len = self.levels[level].orbit.len();
        let old_gen_count = self.levels[level].generators.len();
        self.levels[level].generators.push(g);

        // Close the orbit: old points only need the new generator, new
        // points need every generator.
        let mut i = 0;
        while i < self.levels[level].orbit.len() {
            let lv = &mut self.levels[level];
            let p = lv.orbit[i];
            let first_gen = if i < old_orbit_len { old_gen_count } else { 0 };
            for s in first_gen..lv.generators.len() {
                let q = lv.generators[s].apply(p);
                if lv.transversal[q].is_none() {
                    let u = lv.generators[s].compose(&lv.transversal[p].as_ref().unwrap().0);
                    let u_inv = u.inverse();
                    lv.transversal[q] = Some((u, u_inv));
                    lv.orbit.push(q);
                }
            }
            i += 1;
        }

        // Schreier generators for every (point, generator) pair not seen before.
        let orbit_len = self.levels[level].orbit.len();
        let gen_count = self.levels[level].generators.len();
        for i in 0..orbit_len {
            let first_gen = if i < old_orbit_len { old_gen_count } else { 0 };
            for s in first_gen..gen_count {
                let schreier = {
                    let lv = &self.levels[level];
                    let p = lv.orbit[i];
                    let gen = &lv.generators[s];
                    let q = gen.apply(p);
                    let u_p = &lv.transversal[p].as_ref().unwrap().0;
                    let u_q_inv = &lv.transversal[q].as_ref().unwrap().1;
                    u_q_inv.compose(&gen.compose(u_p))
                };
                if !schreier.is_identity() {
                    self.add(level + 1, schreier);
                }
            }
        }
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .map(|l| BigUint::from(l.orbit.len()))
            .product()
    }
}

/// Exact order of the group generated by `generators` acting on `0..degree`.
pub fn group_order(generators: &[Permutation], degree: usize) -> Result<BigUint> {
    Ok(StabilizerChain::new(degree, generators)?.order())
}

/// Orbits of `0..degree` under the generators, each sorted, ordered by
/// smallest element.
pub fn orbits(generators: &[Permutation], degree: usize) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..degree).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for g in generators {
        for p in 0..degree {
            let (a, b) = (find(&mut parent, p), find(&mut parent, g.apply(p)));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for p in 0..degree {
        let root = find(&mut parent, p);
        groups.entry(root).or_default().push(p);
    }
    groups.into_values().collect()
}

/// Squared distances `D[u][v] = q(u − v)`.
pub fn distance_matrix(inst: &DelaunayInstance) -> Vec<Vec<Rational>> {
    let codes = DistanceCodes::new(&inst.vertices, &inst.form);
    let n = inst.vertices.len();
    (0..n)
        .map(|u| {
            (0..n)
                .map(|v| codes.values[codes.get(u, v) as usize].clone())
                .collect()
        })
        .collect()
}

/// Distance matrix with each distinct value replaced by a small code.
struct DistanceCodes {
    n: usize,
    codes: Vec<u32>,
    values: Vec<Rational>,
}

impl DistanceCodes {
    fn new(vertices: &[RVector], form: &QuadraticForm) -> Self {
        Self::integral(vertices, form).unwrap_or_else(|| Self::rational(vertices, form))
    }

    fn get(&self, u: usize, v: usize) -> u32 {
        self.codes[u * self.n + v]
    }

    fn from_values<T: Ord + Clone>(n: usize, raw: Vec<T>, decode: impl Fn(&T) -> Rational) -> Self {
        let mut distinct: Vec<T> = raw.clone();
        distinct.sort();
        distinct.dedup();
        let index: BTreeMap<&T, u32> = distinct
            .iter()
            .enumerate()
            .map(|(i, v)| (v, i as u32))
            .collect();
        let codes = raw.iter().map(|v| index[v]).collect();
        let values = distinct.iter().map(decode).collect();
        Self { n, codes, values }
    }

    /// Scales coordinates and form to integers and works in `i64` when every
    /// intermediate fits; returns `None` otherwise.
    fn integral(vertices: &[RVector], form: &QuadraticForm) -> Option<Self> {
        let n = vertices.len();
        let dim = form.dim();
        let lcm_of = |xs: &mut dyn Iterator<Item = &Rational>| {
            xs.fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
        };
        let coord_scale = lcm_of(&mut vertices.iter().flatten());
        let form_scale = lcm_of(
            &mut form
                .matrix()
                .to_rows()
                .iter()
                .flatten()
                .collect::<Vec<_>>()
                .into_iter(),
        );
        let to_i64 = |x: &Rational, scale: &BigInt| -> Option<i64> {
            let v = x.numer() * (scale / x.denom());
            if v.abs() > BigInt::from(1i64 << 20) {
                None
            } else {
                v.to_i64()
            }
        };
        let pts: Vec<Vec<i64>> = vertices
            .iter()
            .map(|v| {
                v.iter()
                    .map(|x| to_i64(x, &coord_scale))
                    .collect::<Option<Vec<_>>>()
            })
            .collect::<Option<_>>()?;
        let q: Vec<Vec<i64>> = form
            .matrix()
            .to_rows()
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| to_i64(x, &form_scale))
                    .collect::<Option<Vec<_>>>()
            })
            .collect::<Option<_>>()?;
        let mut raw = vec![0i64; n * n];
        let mut diff = vec![0i64; dim];
        for u in 0..n {
            for v in u + 1..n {
                for k in 0..dim {
                    diff[k] = pts[u][k] - pts[v][k];
                }
                let mut acc: i64 = 0;
                for i in 0..dim {
                    if diff[i] == 0 {
                        continue;
                    }
                    let mut row: i64 = 0;
                    for j in 0..dim {
                        row = row.checked_add(q[i][j].checked_mul(diff[j])?)?;
                    }
                    acc = acc.checked_add(diff[i].checked_mul(row)?)?;
                }
                raw[u * n + v] = acc;
                raw[v * n + u] = acc;
            }
        }
        let denom = form_scale * &coord_scale * &coord_scale;
        Some(Self::from_values(n, raw, |&x| {
            Rational::new(BigInt::from(x), denom.clone())
        }))
    }

    fn rational(vertices: &[RVector], form: &QuadraticForm) -> Self {
        let n = vertices.len();
        let mut raw = vec![Rational::zero(); n * n];
        for u in 0..n {
            for v in u + 1..n {
                let d = form.distance_sq(&vertices[u], &vertices[v]);
                raw[u * n + v] = d.clone();
                raw[v * n + u] = d;
            }
        }
        Self::from_values(n, raw, Rational::clone)
    }
}

/// Equitable refinement of the coloring by distance profiles.
fn refine_colors(d: &DistanceCodes) -> Vec<u32> {
    let n = d.n;
    let relabel = |sigs: Vec<Vec<u64>>| -> Vec<u32> {
        let distinct: BTreeMap<&Vec<u64>, u32> = {
            let mut keys: Vec<&Vec<u64>> = sigs.iter().collect();
            keys.sort();
            keys.dedup();
            keys.into_iter()
                .enumerate()
                .map(|(i, k)| (k, i as u32))
                .collect()
        };
        sigs.iter().map(|s| distinct[s]).collect()
    };
    let initial: Vec<Vec<u64>> = (0..n)
        .map(|u| {
            let mut row: Vec<u64> = (0..n).map(|v| d.get(u, v) as u64).collect();
            row.sort_unstable();
            row
        })
        .collect();
    let mut colors = relabel(initial);
    let mut classes = colors.iter().max().map_or(0, |&m| m + 1);
    loop {
        let sigs: Vec<Vec<u64>> = (0..n)
            .map(|u| {
                let mut sig: Vec<u64> = (0..n)
                    .map(|v| ((colors[v] as u64) << 32) | d.get(u, v) as u64)
                    .collect();
                sig.sort_unstable();
                sig.insert(0, colors[u] as u64);
                sig
            })
            .collect();
        let next = relabel(sigs);
        let next_classes = next.iter().max().map_or(0, |&m| m + 1);
        colors = next;
        if next_classes == classes {
            return colors;
        }
        classes = next_classes;
    }
}

struct AutomorphismSearch<'a> {
    d: &'a DistanceCodes,
    colors: Vec<u32>,
    base: Vec<usize>,
}

impl<'a> AutomorphismSearch<'a> {
    fn new(d: &'a DistanceCodes) -> Self {
        let colors = refine_colors(d);
        let base = Self::choose_base(d, &colors);
        Self { d, colors, base }
    }

    /// Individualizes a vertex of the largest remaining cell until the
    /// distances to the base separate all vertices.
    fn choose_base(d: &DistanceCodes, colors: &[u32]) -> Vec<usize> {
        let n = d.n;
        let mut cell: Vec<u32> = colors.to_vec();
        let mut base = Vec::new();
        loop {
            let mut members: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
            for v in 0..n {
                members.entry(cell[v]).or_default().push(v);
            }
            let Some(largest) = members
                .values()
                .filter(|m| m.len() > 1)
                .max_by(|a, b| a.len().cmp(&b.len()).then(b[0].cmp(&a[0])))
            else {
                return base;
            };
            let b = largest[0];
            base.push(b);
            let keys: Vec<(u32, u32)> = (0..n).map(|v| (cell[v], d.get(b, v))).collect();
            let mut distinct = keys.clone();
            distinct.sort_unstable();
            distinct.dedup();
            cell = keys
                .iter()
                .map(|k| distinct.binary_search(k).unwrap() as u32)
                .collect();
        }
    }

    fn consistent(&self, level: usize, candidate: usize, images: &[usize]) -> bool {
        let b = self.base[level];
        self.colors[candidate] == self.colors[b]
            && !images.contains(&candidate)
            && images
                .iter()
                .zip(&self.base)
                .all(|(&img, &src)| self.d.get(candidate, img) == self.d.get(b, src))
    }

    /// The unique permutation sending the base to `images`, if it is an automorphism.
    fn complete(&self, images: &[usize]) -> Option<Permutation> {
        let n = self.d.n;
        let key = |v: usize, points: &[usize]| -> Vec<u32> {
            let mut k = Vec::with_capacity(points.len() + 1);
            k.push(self.colors[v]);
            k.extend(points.iter().map(|&p| self.d.get(v, p)));
            k
        };
        let mut targets: HashMap<Vec<u32>, usize> = HashMap::with_capacity(n);
        for w in 0..n {
            if targets.insert(key(w, images), w).is_some() {
                return None;
            }
        }
        let perm: Vec<u32> = (0..n)
            .map(|v| targets.get(&key(v, &self.base)).map(|&w| w as u32))
            .collect::<Option<_>>()?;
        for u in 0..n {
            let pu = perm[u] as usize;
            for v in u + 1..n {
                if self.d.get(u, v) != self.d.get(pu, perm[v] as usize) {
                    return None;
                }
            }
        }
        Some(Permutation(perm))
    }

    fn extend(&self, images: &mut Vec<usize>) -> Option<Permutation> {
        let level = images.len();
        if level == self.base.len() {
            return self.complete(images);
        }
        for w in 0..self.d.n {
            if !self.consistent(level, w, images) {
                continue;
            }
            images.push(w);
            let found = self.extend(images);
            images.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }

    /// Generators for each point stabilizer in the base, deepest first, and
    /// the orbit length at every level.
    fn run(&self) -> (Vec<Permutation>, Vec<usize>) {
        let n = self.d.n;
        let mut generators: Vec<Permutation> = Vec::new();
        let mut orbit_sizes = vec![0; self.base.len()];
        for level in (0..self.base.len()).rev() {
            let b = self.base[level];
            let prefix = &self.base[..level];
            let mut in_orbit = vec![false; n];
            let mut rejected = vec![false; n];
            let mut orbit = vec![b];
            in_orbit[b] = true;
            let close = |set: &mut Vec<usize>, flags: &mut [bool], gens: &[Permutation]| {
                let mut i = 0;
                while i < set.len() {
                    for g in gens {
                        let q = g.apply(set[i]);
                        if !flags[q] {
                            flags[q] = true;
                            set.push(q);
                        }
                    }
                    i += 1;
                }
            };
            close(&mut orbit, &mut in_orbit, &generators);
            for w in 0..n {
                if in_orbit[w] || rejected[w] || !self.consistent(level, w, prefix) {
                    continue;
                }
                let mut images = prefix.to_vec();
                images.push(w);
                match self.extend(&mut images) {
                    Some(g) => {
                        generators.push(g);
                        close(&mut orbit, &mut in_orbit, &generators);
                    }
                    None => {
                        let mut bad = vec![w];
                        rejected[w] = true;
                        close(&mut bad, &mut rejected, &generators);
                    }
                }
            }
            orbit_sizes[level] = orbit.len();
        }
        (generators, orbit_sizes)
    }
}

/// Isometry group of an instance's vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryReport {
    pub generators: Vec<Permutation>,
    pub group_order: BigUint,
    pub orbit_count: usize,
    pub orbits: Vec<Vec<usize>>,
}

pub fn automorphisms(inst: &DelaunayInstance) -> SymmetryReport {
    automorphisms_of(&inst.vertices, &inst.form)
}

pub fn automorphisms_of(vertices: &[RVector], form: &QuadraticForm) -> SymmetryReport {
    let degree = vertices.len();
    let codes = DistanceCodes::new(vertices, form);
    let search = AutomorphismSearch::new(&codes);
    let (generators, orbit_sizes) = search.run();
    let group_order = group_order(&generators, degree).expect("generators have the vertex degree");
    debug_assert_eq!(
        group_order,
        orbit_sizes
            .iter()
            .map(|&s| BigUint::from(s))
            .product::<BigUint>(),
        "stabilizer chain disagrees with search"
    );
    let orbits = orbits(&generators, degree);
    SymmetryReport {
        orbit_count: orbits.len(),
        generators,
        group_order,
        orbits,
    }
}

/// Checks `D[g(u)][g(v)] = D[u][v]` for every pair.
pub fn preserves_distances(g: &Permutation, distances: &[Vec<Rational>]) -> bool {
    let n = distances.len();
    g.degree() == n
        && (0..n).all(|u| (0..n).all(|v| distances[g.apply(u)][g.apply(v)] == distances[u][v]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{construct_cross_polytope, construct_half_cube, construct_pn};
    use crate::exactlin::{int, rvec};

    fn perm(images: &[usize]) -> Permutation {
        Permutation::from_images(images.to_vec()).unwrap()
    }

    #[test]
    fn group_order_examples() {
        assert_eq!(
            group_order(&[perm(&[1, 0])], 2).unwrap(),
            BigUint::from(2u32)
        );
        assert_eq!(
            group_order(&[perm(&[1, 0, 2, 3]), perm(&[1, 2, 3, 0])], 4).unwrap(),
            BigUint::from(24u32)
        );
        assert_eq!(
            group_order(&[Permutation::identity(5)], 5).unwrap(),
            BigUint::one()
        );
        assert_eq!(group_order(&[], 3).unwrap(), BigUint::one());
    }

    #[test]
    fn malformed_permutations() {
        assert!(Permutation::from_images(vec![0, 0]).is_err());
        assert!(Permutation::from_images(vec![0, 2]).is_err());
        assert!(group_order(&[perm(&[1, 0])], 3).is_err());
    }

    #[test]
    fn larger_groups() {
        // Sym(7) from a transposition and a 7-cycle
        let t = perm(&[1, 0, 2, 3, 4, 5, 6]);
        let c = perm(&[1, 2, 3, 4, 5, 6, 0]);
        assert_eq!(group_order(&[t, c], 7).unwrap(), BigUint::from(5040u32));
        // Alt(5) from two 3-cycles
        let a = perm(&[1, 2, 0, 3, 4]);
        let b = perm(&[0, 1, 3, 4, 2]);
        assert_eq!(group_order(&[a, b], 5).unwrap(), BigUint::from(60u32));
        // cyclic group of order 12 = lcm(3, 4) acting on two disjoint cycles
        let g = perm(&[1, 2, 0, 4, 5, 6, 3]);
        let chain = StabilizerChain::new(7, std::slice::from_ref(&g)).unwrap();
        assert_eq!(chain.order(), BigUint::from(12u32));
        assert!(chain.contains(&g.compose(&g)));
        assert!(!chain.contains(&perm(&[1, 0, 2, 3, 4, 5, 6])));
    }

    #[test]
    fn two_points() {
        let form = QuadraticForm::identity(1);
        let r = automorphisms_of(&[rvec(&[0]), rvec(&[1])], &form);
        assert_eq!(r.group_order, BigUint::from(2u32));
        assert_eq!(r.orbit_count, 1);
    }

    #[test]
    fn distance_matrix_examples() {
        let inst = crate::constructions::construct_segment();
        assert_eq!(
            distance_matrix(&inst),
            vec![vec![int(0), int(1)], vec![int(1), int(0)]]
        );
        let p6 = construct_pn(6).unwrap();
        let d = distance_matrix(&p6);
        for w in 1..17 {
            assert_eq!(d[0][w], int(2));
        }
        let p8 = construct_pn(8).unwrap();
        let d = distance_matrix(&p8);
        for w in 1..65 {
            assert_eq!(d[0][w], int(3));
        }
    }

    #[test]
    fn rational_and_integral_codes_agree() {
        let p6 = construct_pn(6).unwrap();
        let a = DistanceCodes::integral(&p6.vertices, &p6.form).unwrap();
        let b = DistanceCodes::rational(&p6.vertices, &p6.form);
        assert_eq!(a.codes, b.codes);
        assert_eq!(a.values, b.values);
    }

    #[test]
    fn small_polytopes() {
        let r = automorphisms(&construct_cross_polytope(3).unwrap());
        assert_eq!(r.group_order, BigUint::from(48u32));
        assert_eq!(r.orbit_count, 1);
        let r = automorphisms(&construct_half_cube(3).unwrap());
        assert_eq!(r.group_order, BigUint::from(24u32));
        let r = automorphisms(&construct_half_cube(5).unwrap());
        assert_eq!(r.group_order, BigUint::from(1920u32));
    }

    #[test]
    fn p6_and_p8() {
        let p6 = construct_pn(6).unwrap();
        let r = automorphisms(&p6);
        assert_eq!(r.group_order, BigUint::from(51840u32));
        assert_eq!(r.orbit_count, 1);
        let d = distance_matrix(&p6);
        assert!(r.generators.iter().all(|g| preserves_distances(g, &d)));

        let r = automorphisms(&construct_pn(8).unwrap());
        assert_eq!(r.group_order, BigUint::from(322_560u32));
        let mut sizes: Vec<usize> = r.orbits.iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 14, 64]);
    }
}
