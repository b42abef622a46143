//! Decomposition of a rooted tree into a small seed set and small rooted
//! pieces.
//!
//! Construction: repeatedly pick the deepest vertex whose current subtree
//! exceeds `beta * t` vertices (ties by smallest index), add it to the seed
//! set, and detach its whole subtree; when no heavy vertex remains, add the
//! root. Each detachment removes more than `beta * t` vertices, so the seed
//! set stays below `1/beta + 2`, and pieces (the components left after
//! deleting the seeds) never exceed `beta * t` vertices. All of this is
//! re-checked before returning.

use thiserror::Error;

use crate::tree::RootedTree;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DecompError {
    #[error("beta must lie in (0, 1), got {0}")]
    BetaOutOfRange(f64),
    #[error("tree with {edges} edges is too small for beta {beta} (need more than {min} edges)")]
    TreeTooSmall { edges: usize, beta: f64, min: usize },
    #[error("decomposition does not belong to this tree")]
    Mismatched,
}

/// One piece: a component of `T - S`, rooted at its vertex closest to the
/// root of `T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    /// Vertices of the piece (original tree indices, ascending).
    pub vertices: Vec<usize>,
    /// The piece root; its parent in `T` is a seed.
    pub root: usize,
}

/// Seeds, pieces, and linking vertices of a tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaDecomposition {
    pub seeds: Vec<usize>,
    pub pieces: Vec<Piece>,
    /// Piece roots other than the tree root (which is always a seed).
    pub linking: Vec<usize>,
    pub beta: f64,
    /// Edge count of the decomposed tree.
    pub t: usize,
}

/// Splits `tree` into seeds and pieces for the given `beta`.
///
/// Requires `beta` in `(0, 1)` and more than `1/beta` edges. Every structural
/// invariant is verified before the value is returned.
pub fn beta_decompose(tree: &RootedTree, beta: f64) -> Result<BetaDecomposition, DecompError> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(DecompError::BetaOutOfRange(beta));
    }
    let t = tree.edge_count();
    let min_edges = (1.0 / beta) as usize;
    if (t as f64) <= 1.0 / beta {
        return Err(DecompError::TreeTooSmall { edges: t, beta, min: min_edges });
    }
    let threshold = beta * t as f64;
    let n = tree.vertex_count();

    // Working tree as an alive-flag; detached subtrees leave it wholesale.
    let mut alive = vec![true; n];
    let mut seeds = Vec::new();
    let order = tree.bfs_order();

    loop {
        // Subtree sizes over the alive part only.
        let mut size = vec![0usize; n];
        for &v in order.iter().rev() {
            if !alive[v] {
                continue;
            }
            size[v] += 1;
            if let Some(p) = tree.parent(v) {
                size[p] += size[v];
            }
        }
        // Deepest heavy vertex, ties by smallest index.
        let mut pick: Option<usize> = None;
        for v in 0..n {
            if alive[v] && size[v] as f64 > threshold {
                let better = match pick {
                    None => true,
                    Some(u) => {
                        tree.depth(v) > tree.depth(u)
                            || (tree.depth(v) == tree.depth(u) && v < u)
                    }
                };
                if better {
                    pick = Some(v);
                }
            }
        }
        let Some(v) = pick else { break };
        seeds.push(v);
        // Detach the whole subtree of v (BFS within alive vertices).
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            alive[u] = false;
            stack.extend(tree.children(u).iter().copied().filter(|&c| alive[c]));
        }
    }
    if !seeds.contains(&tree.root()) {
        seeds.push(tree.root());
    }
    seeds.sort_unstable();

    let pieces = components_without(tree, &seeds);
    let linking: Vec<usize> =
        pieces.iter().map(|p| p.root).filter(|&r| r != tree.root()).collect();
    let dec = BetaDecomposition { seeds, pieces, linking, beta, t };
    debug_assert!(check_invariants(tree, &dec).is_ok());
    if let Err(msg) = check_invariants(tree, &dec) {
        unreachable!("decomposition invariant failed: {msg}");
    }
    Ok(dec)
}

/// Components of `T - S`, each rooted at its shallowest vertex.
fn components_without(tree: &RootedTree, seeds: &[usize]) -> Vec<Piece> {
    let n = tree.vertex_count();
    let is_seed: Vec<bool> = {
        let mut f = vec![false; n];
        for &s in seeds {
            f[s] = true;
        }
        f
    };
    let mut comp = vec![usize::MAX; n];
    let mut pieces: Vec<Piece> = Vec::new();
    // BFS order guarantees a piece is discovered at its shallowest vertex.
    for &v in &tree.bfs_order() {
        if is_seed[v] {
            continue;
        }
        let c = match tree.parent(v) {
            Some(p) if !is_seed[p] => comp[p],
            _ => {
                pieces.push(Piece { vertices: Vec::new(), root: v });
                pieces.len() - 1
            }
        };
        comp[v] = c;
        pieces[c].vertices.push(v);
    }
    for p in &mut pieces {
        p.vertices.sort_unstable();
    }
    pieces
}

/// Re-derives every invariant from scratch; used by both the constructor and
/// tests.
pub fn check_invariants(tree: &RootedTree, dec: &BetaDecomposition) -> Result<(), String> {
    let t = tree.edge_count();
    let n = tree.vertex_count();
    if dec.t != t {
        return Err(format!("edge count mismatch: {} vs {}", dec.t, t));
    }
    if !dec.seeds.contains(&tree.root()) {
        return Err("root is not a seed".into());
    }
    let bound = 1.0 / dec.beta + 2.0;
    if dec.seeds.len() as f64 >= bound {
        return Err(format!("{} seeds, bound {}", dec.seeds.len(), bound));
    }
    let recomputed = components_without(tree, &dec.seeds);
    if recomputed != dec.pieces {
        return Err("pieces are not the components of T - S".into());
    }
    let mut is_seed = vec![false; n];
    for &s in &dec.seeds {
        is_seed[s] = true;
    }
    let mut piece_of = vec![usize::MAX; n];
    for (c, piece) in dec.pieces.iter().enumerate() {
        for &v in &piece.vertices {
            piece_of[v] = c;
        }
    }
    for (c, piece) in dec.pieces.iter().enumerate() {
        if piece.vertices.len() as f64 > dec.beta * t as f64 {
            return Err(format!(
                "piece of {} vertices exceeds beta*t = {}",
                piece.vertices.len(),
                dec.beta * t as f64
            ));
        }
        // The piece root is the unique piece vertex whose parent is a seed;
        // everyone else's parent stays inside the piece.
        for &v in &piece.vertices {
            let p = tree.parent(v).expect("piece vertices are not the tree root");
            if v == piece.root {
                if !is_seed[p] {
                    return Err(format!("piece root {v} has non-seed parent {p}"));
                }
            } else if piece_of[p] != c {
                return Err(format!("piece vertex {v} has parent {p} outside the piece"));
            }
        }
    }
    let mut expected_linking: Vec<usize> = dec
        .pieces
        .iter()
        .map(|p| p.root)
        .filter(|&r| r != tree.root())
        .collect();
    expected_linking.sort_unstable();
    let mut got = dec.linking.clone();
    got.sort_unstable();
    if expected_linking != got {
        return Err("linking vertices disagree with piece roots".into());
    }
    let covered: usize =
        dec.seeds.len() + dec.pieces.iter().map(|p| p.vertices.len()).sum::<usize>();
    if covered != tree.vertex_count() {
        return Err("seeds and pieces do not partition V(T)".into());
    }
    Ok(())
}

/// Parity of each piece: `(x, y)` counts the piece's vertices of even and
/// odd depth in the original tree (not depth within the piece).
pub fn piece_parity_counts(
    tree: &RootedTree,
    dec: &BetaDecomposition,
) -> Result<Vec<(usize, usize)>, DecompError> {
    if dec.t != tree.edge_count()
        || dec.seeds.iter().any(|&s| s >= tree.vertex_count())
        || dec.pieces.iter().flat_map(|p| &p.vertices).any(|&v| v >= tree.vertex_count())
    {
        return Err(DecompError::Mismatched);
    }
    Ok(dec
        .pieces
        .iter()
        .map(|p| {
            let x = p.vertices.iter().filter(|&&v| tree.depth(v) % 2 == 0).count();
            (x, p.vertices.len() - x)
        })
        .collect())
}
