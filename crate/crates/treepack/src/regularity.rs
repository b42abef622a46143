//! Equitable partitions, heuristic regularity testing, reduced graphs,
//! cluster matchings, and typicality predicates.
//!
//! Regularity testing here is one-sided: a returned witness is a genuine
//! violation (re-checkable from exact densities), while "no witness" only
//! means the bounded search found nothing, not that the pair is regular.
//! Candidates come from degree-deviation sets plus seeded random significant
//! subsets, evaluated in a fixed order so results are reproducible even when
//! the scan runs in parallel.

use num_rational::Rational64;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::exec::{self, ExecMode};
use crate::graph::{BipartiteGraph, Side};

pub fn rational_to_f64(r: Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Smallest subset size that counts as eps-significant for a ground set of
/// `len` vertices.
pub fn significant_size(len: usize, eps: f64) -> usize {
    ((eps * len as f64).ceil() as usize).max(1)
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PartitionError {
    #[error("host sides differ ({side_a} vs {side_b}); equitable partition needs a balanced host")]
    UnbalancedHost { side_a: usize, side_b: usize },
    #[error("cluster count must be at least 1")]
    ZeroClusters,
    #[error("cluster count {s} leaves {remainder} leftover vertices, above the bound {allowed}")]
    RemainderTooLarge { s: usize, remainder: usize, allowed: f64 },
}

/// Equitable partition of both sides into `s` clusters of uniform size plus
/// exceptional leftovers.
#[derive(Debug, Clone, PartialEq)]
pub struct RegularPartition {
    pub clusters_x: Vec<Vec<usize>>,
    pub clusters_y: Vec<Vec<usize>>,
    pub exceptional_x: Vec<usize>,
    pub exceptional_y: Vec<usize>,
    pub cluster_size: usize,
    pub s: usize,
    pub eps: f64,
    pub seed: u64,
}

/// Uniformly random equitable split of each side, seeded and reproducible.
/// Leftover vertices (at most `eps * n` per side) become exceptional.
pub fn equitable_partition(
    g: &BipartiteGraph,
    s: usize,
    eps: f64,
    seed: u64,
) -> Result<RegularPartition, PartitionError> {
    let n = g.side_size(Side::A);
    if n != g.side_size(Side::B) {
        return Err(PartitionError::UnbalancedHost {
            side_a: n,
            side_b: g.side_size(Side::B),
        });
    }
    if s == 0 {
        return Err(PartitionError::ZeroClusters);
    }
    let m0 = n / s;
    let remainder = n - s * m0;
    let allowed = eps * n as f64;
    if m0 == 0 || remainder as f64 > allowed {
        return Err(PartitionError::RemainderTooLarge { s, remainder, allowed });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let split = |rng: &mut ChaCha8Rng| {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        let mut clusters = Vec::with_capacity(s);
        for i in 0..s {
            let mut cluster = order[i * m0..(i + 1) * m0].to_vec();
            cluster.sort_unstable();
            clusters.push(cluster);
        }
        let mut exceptional = order[s * m0..].to_vec();
        exceptional.sort_unstable();
        (clusters, exceptional)
    };
    let (clusters_x, exceptional_x) = split(&mut rng);
    let (clusters_y, exceptional_y) = split(&mut rng);

    Ok(RegularPartition {
        clusters_x,
        clusters_y,
        exceptional_x,
        exceptional_y,
        cluster_size: m0,
        s,
        eps,
        seed,
    })
}

/// A concrete violation of eps-regularity: two significant subsets whose
/// density strays from the pair density by more than eps.
#[derive(Debug, Clone, PartialEq)]
pub struct RegularityWitness {
    /// Cluster pair the witness belongs to; (0, 0) for standalone searches.
    pub pair: (usize, usize),
    pub subset_x: Vec<usize>,
    pub subset_y: Vec<usize>,
    pub base_density: Rational64,
    pub sub_density: Rational64,
}

impl RegularityWitness {
    pub fn deviation(&self) -> f64 {
        (rational_to_f64(self.base_density) - rational_to_f64(self.sub_density)).abs()
    }

    /// Recomputes both densities from scratch and re-checks significance and
    /// deviation. Independent of the search that produced the witness.
    pub fn reverify(&self, g: &BipartiteGraph, x: &[usize], y: &[usize], eps: f64) -> bool {
        if self.subset_x.len() < significant_size(x.len(), eps)
            || self.subset_y.len() < significant_size(y.len(), eps)
        {
            return false;
        }
        let in_x = self.subset_x.iter().all(|v| x.contains(v));
        let in_y = self.subset_y.iter().all(|v| y.contains(v));
        if !in_x || !in_y {
            return false;
        }
        let base = match g.density(x, y) {
            Ok(d) => d,
            Err(_) => return false,
        };
        let sub = match g.density(&self.subset_x, &self.subset_y) {
            Ok(d) => d,
            Err(_) => return false,
        };
        base == self.base_density
            && sub == self.sub_density
            && (rational_to_f64(base) - rational_to_f64(sub)).abs() > eps
    }
}

/// Bounded witness search over a cluster pair, default execution mode.
///
/// Returns `None` when no violation was found within the budget; that is not
/// a proof of regularity.
pub fn regularity_witness(
    g: &BipartiteGraph,
    x: &[usize],
    y: &[usize],
    eps: f64,
    budget: usize,
    seed: u64,
) -> Option<RegularityWitness> {
    find_witness(g, x, y, eps, budget, seed, ExecMode::default())
}

/// Like [`regularity_witness`] with an explicit execution mode. The reported
/// witness is the first one in the fixed candidate order regardless of mode.
pub fn find_witness(
    g: &BipartiteGraph,
    x: &[usize],
    y: &[usize],
    eps: f64,
    budget: usize,
    seed: u64,
    mode: ExecMode,
) -> Option<RegularityWitness> {
    if x.is_empty() || y.is_empty() {
        return None;
    }
    let base = g.density(x, y).expect("nonempty subsets");
    let candidates = witness_candidates(g, x, y, eps, budget, seed);
    exec::find_map_first(mode, &candidates, |(sub_x, sub_y)| {
        let sub = g.density(sub_x, sub_y).expect("nonempty candidate");
        let dev = (rational_to_f64(base) - rational_to_f64(sub)).abs();
        if dev > eps {
            Some(RegularityWitness {
                pair: (0, 0),
                subset_x: sub_x.clone(),
                subset_y: sub_y.clone(),
                base_density: base,
                sub_density: sub,
            })
        } else {
            None
        }
    })
}

/// Candidate subset pairs in deterministic order: degree-deviation prefixes
/// and suffixes on each side first, then seeded random significant pairs.
fn witness_candidates(
    g: &BipartiteGraph,
    x: &[usize],
    y: &[usize],
    eps: f64,
    budget: usize,
    seed: u64,
) -> Vec<(Vec<usize>, Vec<usize>)> {
    let min_x = significant_size(x.len(), eps);
    let min_y = significant_size(y.len(), eps);
    let mut cands = Vec::new();

    // Vertices of X ordered by degree into Y (descending, ties by index).
    let mut x_by_deg: Vec<usize> = x.to_vec();
    x_by_deg.sort_by_key(|&v| (std::cmp::Reverse(g.degree_into(Side::A, v, y)), v));
    let mut y_by_deg: Vec<usize> = y.to_vec();
    y_by_deg.sort_by_key(|&v| (std::cmp::Reverse(g.degree_into(Side::B, v, x)), v));

    let full_y = y.to_vec();
    for k in min_x..=x.len() {
        cands.push((x_by_deg[..k].to_vec(), full_y.clone()));
        cands.push((x_by_deg[x.len() - k..].to_vec(), full_y.clone()));
    }
    let full_x = x.to_vec();
    for k in min_y..=y.len() {
        cands.push((full_x.clone(), y_by_deg[..k].to_vec()));
        cands.push((full_x.clone(), y_by_deg[y.len() - k..].to_vec()));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7265_6775_6c61_7221);
    for _ in 0..budget {
        let kx = rng.gen_range(min_x..=x.len());
        let ky = rng.gen_range(min_y..=y.len());
        let mut pool_x = x.to_vec();
        let (sub_x, _) = pool_x.partial_shuffle(&mut rng, kx);
        let mut sub_x = sub_x.to_vec();
        sub_x.sort_unstable();
        let mut pool_y = y.to_vec();
        let (sub_y, _) = pool_y.partial_shuffle(&mut rng, ky);
        let mut sub_y = sub_y.to_vec();
        sub_y.sort_unstable();
        cands.push((sub_x, sub_y));
    }
    cands
}

/// Cluster-level graph: an edge on pair (i, j) means the pair looked dense
/// and no regularity witness was found for it.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedGraph {
    pub s: usize,
    /// `adjacent[i][j]` for the pair (X_i, Y_j).
    pub adjacent: Vec<Vec<bool>>,
    /// Exact recorded densities per pair.
    pub densities: Vec<Vec<Rational64>>,
    /// Witnesses found for pairs that were dense but irregular.
    pub witnesses: Vec<RegularityWitness>,
}

impl ReducedGraph {
    pub fn density_f64(&self, i: usize, j: usize) -> f64 {
        rational_to_f64(self.densities[i][j])
    }

    pub fn x_neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.s).filter(|&j| self.adjacent[i][j]).collect()
    }

    pub fn y_neighbors(&self, j: usize) -> Vec<usize> {
        (0..self.s).filter(|&i| self.adjacent[i][j]).collect()
    }

    pub fn x_degree(&self, i: usize) -> usize {
        self.adjacent[i].iter().filter(|&&e| e).count()
    }

    pub fn y_degree(&self, j: usize) -> usize {
        (0..self.s).filter(|&i| self.adjacent[i][j]).count()
    }
}

/// Witness-search effort for [`reduced_graph`].
#[derive(Debug, Clone, Copy)]
pub struct WitnessBudget {
    pub random_subsets: usize,
    pub seed: u64,
}

impl Default for WitnessBudget {
    fn default() -> Self {
        Self { random_subsets: 64, seed: 0 }
    }
}

/// Builds the reduced graph of a partition: edges exactly where the recorded
/// density exceeds `d` and the witness search came back empty.
pub fn reduced_graph(
    g: &BipartiteGraph,
    partition: &RegularPartition,
    eps: f64,
    d: f64,
    budget: WitnessBudget,
    mode: ExecMode,
) -> ReducedGraph {
    let s = partition.s;
    let pairs: Vec<(usize, usize)> =
        (0..s).flat_map(|i| (0..s).map(move |j| (i, j))).collect();
    let evaluated = exec::map_collect(mode, &pairs, |&(i, j)| {
        let x = &partition.clusters_x[i];
        let y = &partition.clusters_y[j];
        let density = g.density(x, y).expect("clusters nonempty");
        if rational_to_f64(density) > d {
            // Per-pair seed keeps the whole construction reproducible.
            let pair_seed = budget.seed ^ ((i as u64) << 32 | j as u64);
            let witness = find_witness(
                g,
                x,
                y,
                eps,
                budget.random_subsets,
                pair_seed,
                ExecMode::Sequential,
            )
            .map(|mut w| {
                w.pair = (i, j);
                w
            });
            let edge = witness.is_none();
            (density, witness, edge)
        } else {
            (density, None, false)
        }
    });

    let mut adjacent = vec![vec![false; s]; s];
    let mut densities = vec![vec![Rational64::new(0, 1); s]; s];
    let mut witnesses = Vec::new();
    for (&(i, j), (density, witness, edge)) in pairs.iter().zip(evaluated) {
        densities[i][j] = density;
        adjacent[i][j] = edge;
        if let Some(w) = witness {
            witnesses.push(w);
        }
    }
    ReducedGraph { s, adjacent, densities, witnesses }
}

/// A cluster whose reduced degree falls below the required bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegreeDeficit {
    pub side: Side,
    pub cluster: usize,
    pub degree: usize,
    pub required: f64,
}

/// Checks `δ(R) ≥ (lambda - (d + eps)) * s` for every cluster.
pub fn check_reduced_min_degree(
    r: &ReducedGraph,
    lambda: f64,
    d: f64,
    eps: f64,
) -> Result<(), DegreeDeficit> {
    let required = (lambda - (d + eps)) * r.s as f64;
    for i in 0..r.s {
        let degree = r.x_degree(i);
        if (degree as f64) < required {
            return Err(DegreeDeficit { side: Side::A, cluster: i, degree, required });
        }
    }
    for j in 0..r.s {
        let degree = r.y_degree(j);
        if (degree as f64) < required {
            return Err(DegreeDeficit { side: Side::B, cluster: j, degree, required });
        }
    }
    Ok(())
}

/// Outcome of the cluster matching: either a perfect matching (as the
/// permutation pairing X_i with Y_{perm[i]}) or a set of X-clusters whose
/// joint neighborhood is smaller than the set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatchingResult {
    Perfect(Vec<usize>),
    HallViolator(Vec<usize>),
}

/// Augmenting-path matching over the reduced graph's cluster pairs.
pub fn cluster_matching(r: &ReducedGraph) -> MatchingResult {
    let s = r.s;
    let mut match_x: Vec<Option<usize>> = vec![None; s];
    let mut match_y: Vec<Option<usize>> = vec![None; s];

    fn augment(
        r: &ReducedGraph,
        i: usize,
        visited_y: &mut [bool],
        match_x: &mut [Option<usize>],
        match_y: &mut [Option<usize>],
    ) -> bool {
        for j in 0..r.s {
            if r.adjacent[i][j] && !visited_y[j] {
                visited_y[j] = true;
                let free = match match_y[j] {
                    None => true,
                    Some(i2) => augment(r, i2, visited_y, match_x, match_y),
                };
                if free {
                    match_x[i] = Some(j);
                    match_y[j] = Some(i);
                    return true;
                }
            }
        }
        false
    }

    for i in 0..s {
        let mut visited_y = vec![false; s];
        augment(r, i, &mut visited_y, &mut match_x, &mut match_y);
    }

    if match_x.iter().all(|m| m.is_some()) {
        return MatchingResult::Perfect(match_x.into_iter().map(|m| m.unwrap()).collect());
    }

    // Alternating reachability from an unmatched X-cluster gives a Hall
    // certificate: every reachable Y-cluster is matched back into the set.
    let start = match_x.iter().position(|m| m.is_none()).unwrap();
    let mut set_x = vec![false; s];
    let mut seen_y = vec![false; s];
    set_x[start] = true;
    let mut stack = vec![start];
    while let Some(i) = stack.pop() {
        for j in 0..s {
            if r.adjacent[i][j] && !seen_y[j] {
                seen_y[j] = true;
                if let Some(i2) = match_y[j] {
                    if !set_x[i2] {
                        set_x[i2] = true;
                        stack.push(i2);
                    }
                }
            }
        }
    }
    let violator: Vec<usize> = (0..s).filter(|&i| set_x[i]).collect();
    debug_assert!(seen_y.iter().filter(|&&b| b).count() < violator.len());
    MatchingResult::HallViolator(violator)
}

/// Is `v` typical to `subset`: does its degree into the subset reach
/// `(base_density - eps) * |subset|`?
pub fn typical_to(
    g: &BipartiteGraph,
    side: Side,
    v: usize,
    subset: &[usize],
    base_density: f64,
    eps: f64,
) -> bool {
    if subset.is_empty() {
        return true;
    }
    g.degree_into(side, v, subset) as f64 >= (base_density - eps) * subset.len() as f64
}

/// Number of target subsets `v` is typical to; the caller compares against
/// its `(1 - sqrt(eps)) * s` style threshold.
pub fn typicality_profile(
    g: &BipartiteGraph,
    side: Side,
    v: usize,
    targets: &[Vec<usize>],
    base_densities: &[f64],
    eps: f64,
) -> usize {
    assert_eq!(targets.len(), base_densities.len());
    targets
        .iter()
        .zip(base_densities)
        .filter(|(t, &bd)| typical_to(g, side, v, t, bd, eps))
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equitable_partition_shapes() {
        let g = BipartiteGraph::complete(10, 10);
        let p = equitable_partition(&g, 2, 0.2, 7).unwrap();
        assert_eq!(p.cluster_size, 5);
        assert!(p.exceptional_x.is_empty() && p.exceptional_y.is_empty());

        let p = equitable_partition(&g, 3, 0.2, 7).unwrap();
        assert_eq!(p.cluster_size, 3);
        assert_eq!(p.exceptional_x.len(), 1);

        assert!(matches!(
            equitable_partition(&g, 4, 0.05, 7),
            Err(PartitionError::RemainderTooLarge { remainder: 2, .. })
        ));
    }

    #[test]
    fn partition_is_seed_stable_and_covers_side() {
        let g = BipartiteGraph::complete(23, 23);
        let p1 = equitable_partition(&g, 4, 0.2, 99).unwrap();
        let p2 = equitable_partition(&g, 4, 0.2, 99).unwrap();
        assert_eq!(p1, p2);
        let mut all: Vec<usize> = p1.clusters_x.iter().flatten().copied().collect();
        all.extend(&p1.exceptional_x);
        all.sort_unstable();
        assert_eq!(all, (0..23).collect::<Vec<_>>());
    }

    #[test]
    fn complete_pair_has_no_witness() {
        let g = BipartiteGraph::complete(8, 8);
        let x: Vec<usize> = (0..8).collect();
        assert!(regularity_witness(&g, &x, &x, 0.1, 50, 3).is_none());
    }

    #[test]
    fn empty_pair_has_no_witness() {
        let g = BipartiteGraph::new(8, 8, []).unwrap();
        let x: Vec<usize> = (0..8).collect();
        assert!(regularity_witness(&g, &x, &x, 0.1, 50, 3).is_none());
    }

    /// Half-split pair at |X| = |Y| = 6: X fully joined to one half of Y.
    /// Exhaustive enumeration pins the maximum deviation at exactly 1/2, and
    /// the search must find a witness that re-verifies.
    #[test]
    fn half_split_witness_matches_exhaustive_oracle() {
        let edges: Vec<(usize, usize)> =
            (0..6).flat_map(|a| (0..3).map(move |b| (a, b))).collect();
        let g = BipartiteGraph::new(6, 6, edges).unwrap();
        let x: Vec<usize> = (0..6).collect();
        let y: Vec<usize> = (0..6).collect();
        let eps = 0.3;

        // Oracle: enumerate all significant subset pairs.
        let base = g.density(&x, &y).unwrap();
        assert_eq!(base, Rational64::new(1, 2));
        let min_sig = significant_size(6, eps);
        let mut max_dev = 0.0f64;
        for mask_x in 1u32..(1 << 6) {
            let sub_x: Vec<usize> = (0..6).filter(|v| mask_x & (1 << v) != 0).collect();
            if sub_x.len() < min_sig {
                continue;
            }
            for mask_y in 1u32..(1 << 6) {
                let sub_y: Vec<usize> = (0..6).filter(|v| mask_y & (1 << v) != 0).collect();
                if sub_y.len() < min_sig {
                    continue;
                }
                let d = g.density(&sub_x, &sub_y).unwrap();
                let dev = (rational_to_f64(base) - rational_to_f64(d)).abs();
                max_dev = max_dev.max(dev);
            }
        }
        assert!((max_dev - 0.5).abs() < 1e-12, "oracle max deviation {max_dev}");

        let w = regularity_witness(&g, &x, &y, eps, 50, 1).expect("witness");
        assert!((w.deviation() - 0.5).abs() < 1e-12);
        assert!(w.reverify(&g, &x, &y, eps));
    }

    #[test]
    fn sequential_and_parallel_witness_agree() {
        let edges: Vec<(usize, usize)> =
            (0..12).flat_map(|a| (0..6).map(move |b| (a, b))).collect();
        let g = BipartiteGraph::new(12, 12, edges).unwrap();
        let x: Vec<usize> = (0..12).collect();
        let seq = find_witness(&g, &x, &x, 0.3, 40, 5, ExecMode::Sequential);
        let par = find_witness(&g, &x, &x, 0.3, 40, 5, ExecMode::Parallel);
        assert_eq!(seq, par);
        assert!(seq.is_some());
    }

    #[test]
    fn reduced_graph_of_complete_host_is_complete() {
        let g = BipartiteGraph::complete(12, 12);
        let p = equitable_partition(&g, 3, 0.1, 1).unwrap();
        let r = reduced_graph(&g, &p, 0.1, 0.2, WitnessBudget::default(), ExecMode::default());
        assert!(r.adjacent.iter().all(|row| row.iter().all(|&e| e)));
        assert!(r.witnesses.is_empty());
    }

    #[test]
    fn reduced_graph_of_empty_host_has_no_edges() {
        let g = BipartiteGraph::new(12, 12, []).unwrap();
        let p = equitable_partition(&g, 3, 0.1, 1).unwrap();
        let r = reduced_graph(&g, &p, 0.1, 0.2, WitnessBudget::default(), ExecMode::default());
        assert!(r.adjacent.iter().all(|row| row.iter().all(|&e| !e)));
    }

    /// Complete host minus a random perfect matching: pair densities stay at
    /// least 1 - 1/m0, every sub-density within 1/4 of the base, so the
    /// reduced graph stays complete. Densities cross-checked by recount.
    #[test]
    fn matching_removal_keeps_reduced_graph_complete() {
        let n = 24;
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| perm[a] != b)
            .collect();
        let g = BipartiteGraph::new(n, n, edges).unwrap();
        let p = equitable_partition(&g, 2, 0.1, 11).unwrap();
        let r = reduced_graph(&g, &p, 0.3, 0.5, WitnessBudget::default(), ExecMode::default());
        for i in 0..2 {
            for j in 0..2 {
                assert!(r.adjacent[i][j]);
                let recount = g
                    .density(&p.clusters_x[i], &p.clusters_y[j])
                    .unwrap();
                assert_eq!(r.densities[i][j], recount);
                assert!(rational_to_f64(recount) >= 1.0 - 1.0 / p.cluster_size as f64);
            }
        }
    }

    #[test]
    fn min_degree_check_reports_deficits() {
        let complete = ReducedGraph {
            s: 3,
            adjacent: vec![vec![true; 3]; 3],
            densities: vec![vec![Rational64::new(1, 1); 3]; 3],
            witnesses: vec![],
        };
        assert!(check_reduced_min_degree(&complete, 1.0, 0.3, 0.1).is_ok());

        let mut holed = complete.clone();
        holed.adjacent[1] = vec![false; 3];
        let deficit = check_reduced_min_degree(&holed, 1.0, 0.3, 0.1).unwrap_err();
        assert_eq!(deficit.cluster, 1);
        assert_eq!(deficit.degree, 0);
    }

    #[test]
    fn matching_on_complete_reduced_graph() {
        let r = ReducedGraph {
            s: 3,
            adjacent: vec![vec![true; 3]; 3],
            densities: vec![vec![Rational64::new(1, 1); 3]; 3],
            witnesses: vec![],
        };
        match cluster_matching(&r) {
            MatchingResult::Perfect(perm) => {
                let mut sorted = perm.clone();
                sorted.sort_unstable();
                assert_eq!(sorted, vec![0, 1, 2]);
            }
            MatchingResult::HallViolator(_) => panic!("complete graph has a perfect matching"),
        }
    }

    #[test]
    fn star_reduced_graph_yields_hall_violator() {
        // All X-clusters adjacent only to Y_0.
        let adjacent = vec![vec![true, false, false]; 3];
        let r = ReducedGraph {
            s: 3,
            adjacent,
            densities: vec![vec![Rational64::new(1, 1); 3]; 3],
            witnesses: vec![],
        };
        match cluster_matching(&r) {
            MatchingResult::HallViolator(set) => {
                assert!(set.len() >= 2);
                // Re-check the certificate: |N(set)| < |set|.
                let mut nbrs = std::collections::BTreeSet::new();
                for &i in &set {
                    for j in 0..3 {
                        if r.adjacent[i][j] {
                            nbrs.insert(j);
                        }
                    }
                }
                assert!(nbrs.len() < set.len());
            }
            MatchingResult::Perfect(_) => panic!("star has no perfect matching"),
        }
    }

    /// Cycle reduced graph (X_i ~ Y_i and Y_{i+1}) has a perfect matching;
    /// cross-checked against exhaustive permutation search.
    #[test]
    fn cycle_reduced_graph_matching_cross_checked() {
        for s in 2..=6 {
            let mut adjacent = vec![vec![false; s]; s];
            for i in 0..s {
                adjacent[i][i] = true;
                adjacent[i][(i + 1) % s] = true;
            }
            let r = ReducedGraph {
                s,
                adjacent: adjacent.clone(),
                densities: vec![vec![Rational64::new(1, 1); s]; s],
                witnesses: vec![],
            };

            // Oracle: try all permutations.
            fn exists_perm(adj: &[Vec<bool>], used: &mut Vec<bool>, i: usize) -> bool {
                if i == adj.len() {
                    return true;
                }
                for j in 0..adj.len() {
                    if adj[i][j] && !used[j] {
                        used[j] = true;
                        if exists_perm(adj, used, i + 1) {
                            return true;
                        }
                        used[j] = false;
                    }
                }
                false
            }
            assert!(exists_perm(&adjacent, &mut vec![false; s], 0));

            match cluster_matching(&r) {
                MatchingResult::Perfect(perm) => {
                    for (i, &j) in perm.iter().enumerate() {
                        assert!(adjacent[i][j]);
                    }
                }
                MatchingResult::HallViolator(_) => panic!("cycle has a perfect matching"),
            }
        }
    }

    #[test]
    fn typicality_basics() {
        let g = BipartiteGraph::complete(6, 6);
        let sub: Vec<usize> = vec![0, 1, 2];
        assert!(typical_to(&g, Side::A, 0, &sub, 1.0, 0.1));

        let sparse = BipartiteGraph::new(6, 6, [(1, 0)]).unwrap();
        assert!(!typical_to(&sparse, Side::A, 0, &sub, 0.5, 0.1));
    }

    #[test]
    fn typicality_monotone_in_eps() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let edges: Vec<(usize, usize)> = (0..10)
            .flat_map(|a| (0..10).map(move |b| (a, b)))
            .filter(|_| rng.gen_bool(0.6))
            .collect();
        let g = BipartiteGraph::new(10, 10, edges).unwrap();
        let sub: Vec<usize> = (0..5).collect();
        for v in 0..10 {
            for base in [0.3, 0.6, 0.9] {
                let mut last = false;
                for eps in [0.05, 0.1, 0.2, 0.4, 0.8] {
                    let t = typical_to(&g, Side::A, v, &sub, base, eps);
                    assert!(t || !last, "typicality must not flip off as eps grows");
                    last = t;
                }
            }
        }
    }

    #[test]
    fn profile_counts_targets() {
        let g = BipartiteGraph::complete(6, 6);
        let targets = vec![vec![0, 1], vec![2, 3], vec![4, 5]];
        let bases = vec![1.0, 1.0, 1.0];
        assert_eq!(typicality_profile(&g, Side::A, 0, &targets, &bases, 0.1), 3);

        let one = vec![vec![0, 1]; 4];
        let count = typicality_profile(&g, Side::A, 0, &one, &vec![1.0; 4], 0.1);
        assert!(count == 0 || count == 4);
    }
}
