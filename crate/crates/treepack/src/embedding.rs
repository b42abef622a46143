//! Embeddings, packings, and the verifier every pipeline output must satisfy.
//!
//! The verifier returns structured violations with witnesses rather than
//! booleans, so a failing test or CLI run can point at the offending vertex
//! or edge.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::graph::{BipartiteGraph, MissingEdge, Side};
use crate::tree::{Guest, MaterializedGuest};

/// Injective map from guest vertices to host vertices, side-respecting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    pub guest_id: String,
    /// Indexed by global guest vertex: (host side, host index).
    pub vertex_map: Vec<(Side, usize)>,
}

impl Embedding {
    pub fn new(guest_id: impl Into<String>, vertex_map: Vec<(Side, usize)>) -> Self {
        Self { guest_id: guest_id.into(), vertex_map }
    }

    /// Host edges used by this embedding of `guest`, in guest edge order.
    pub fn used_host_edges(&self, guest: &MaterializedGuest) -> Vec<(usize, usize)> {
        guest
            .edges()
            .into_iter()
            .map(|(u, v)| {
                let (su, iu) = self.vertex_map[u];
                let (_, iv) = self.vertex_map[v];
                match su {
                    Side::A => (iu, iv),
                    Side::B => (iv, iu),
                }
            })
            .collect()
    }
}

/// One guest together with its embedding; a packing is a list of these over a
/// shared host.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PackingEntry {
    pub guest: Guest,
    pub embedding: Embedding,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Packing {
    pub entries: Vec<PackingEntry>,
}

impl Packing {
    pub fn new(entries: Vec<PackingEntry>) -> Self {
        Self { entries }
    }

    pub fn total_guest_edges(&self) -> usize {
        self.entries
            .iter()
            .filter_map(|e| e.guest.materialize().ok())
            .map(|g| g.edge_count())
            .sum()
    }
}

/// Why an embedding or packing is invalid, with a witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    /// Map length disagrees with the guest's vertex count.
    MapSizeMismatch { expected: usize, got: usize },
    /// A guest vertex maps outside the host.
    HostIndexOutOfRange { guest_vertex: usize, side: Side, index: usize },
    /// Two guest vertices share an image.
    NotInjective { first: usize, second: usize, side: Side, index: usize },
    /// A guest vertex maps to the wrong host side for its class.
    WrongSide { guest_vertex: usize, class: Side, mapped: Side },
    /// A guest edge maps to a non-edge of the host.
    MissingHostEdge { guest_edge: (usize, usize), host_edge: (usize, usize) },
    /// Two embeddings use the same host edge.
    EdgeReuse { host_edge: (usize, usize), first_guest: String, second_guest: String },
    /// The serialized guest structure is itself invalid.
    MalformedGuest { guest_id: String, message: String },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::MapSizeMismatch { expected, got } => {
                write!(f, "vertex map has {got} entries, guest has {expected} vertices")
            }
            Violation::HostIndexOutOfRange { guest_vertex, side, index } => {
                write!(f, "guest vertex {guest_vertex} maps to out-of-range ({side}, {index})")
            }
            Violation::NotInjective { first, second, side, index } => write!(
                f,
                "guest vertices {first} and {second} both map to ({side}, {index})"
            ),
            Violation::WrongSide { guest_vertex, class, mapped } => write!(
                f,
                "guest vertex {guest_vertex} of class {class} maps to side {mapped}"
            ),
            Violation::MissingHostEdge { guest_edge, host_edge } => write!(
                f,
                "guest edge {guest_edge:?} maps to absent host edge {host_edge:?}"
            ),
            Violation::EdgeReuse { host_edge, first_guest, second_guest } => write!(
                f,
                "host edge {host_edge:?} used by both '{first_guest}' and '{second_guest}'"
            ),
            Violation::MalformedGuest { guest_id, message } => {
                write!(f, "guest '{guest_id}' is malformed: {message}")
            }
        }
    }
}

/// Checks one embedding: injective, side-respecting, every guest edge on a
/// host edge.
pub fn verify_embedding(
    host: &BipartiteGraph,
    guest: &MaterializedGuest,
    embedding: &Embedding,
) -> Result<(), Violation> {
    let n = guest.vertex_count();
    if embedding.vertex_map.len() != n {
        return Err(Violation::MapSizeMismatch { expected: n, got: embedding.vertex_map.len() });
    }
    let mut seen: HashMap<(Side, usize), usize> = HashMap::with_capacity(n);
    for (v, &(side, index)) in embedding.vertex_map.iter().enumerate() {
        if index >= host.side_size(side) {
            return Err(Violation::HostIndexOutOfRange { guest_vertex: v, side, index });
        }
        let class = guest.class_of(v);
        if class != side {
            return Err(Violation::WrongSide { guest_vertex: v, class, mapped: side });
        }
        if let Some(&first) = seen.get(&(side, index)) {
            return Err(Violation::NotInjective { first, second: v, side, index });
        }
        seen.insert((side, index), v);
    }
    for (u, v) in guest.edges() {
        let (su, iu) = embedding.vertex_map[u];
        let (_, iv) = embedding.vertex_map[v];
        let (a, b) = match su {
            Side::A => (iu, iv),
            Side::B => (iv, iu),
        };
        if !host.has_edge(a, b) {
            return Err(Violation::MissingHostEdge { guest_edge: (u, v), host_edge: (a, b) });
        }
    }
    Ok(())
}

/// Checks a whole packing: every embedding verifies and no host edge is used
/// by two embeddings. Reports the first colliding edge.
pub fn verify_packing(host: &BipartiteGraph, packing: &Packing) -> Result<(), Violation> {
    let mut edge_owner: HashMap<(usize, usize), &str> = HashMap::new();
    for entry in &packing.entries {
        let guest = entry.guest.materialize().map_err(|e| Violation::MalformedGuest {
            guest_id: entry.embedding.guest_id.clone(),
            message: e.to_string(),
        })?;
        verify_embedding(host, &guest, &entry.embedding)?;
        for host_edge in entry.embedding.used_host_edges(&guest) {
            if let Some(owner) = edge_owner.insert(host_edge, &entry.embedding.guest_id) {
                return Err(Violation::EdgeReuse {
                    host_edge,
                    first_guest: owner.to_string(),
                    second_guest: entry.embedding.guest_id.clone(),
                });
            }
        }
    }
    Ok(())
}

/// Removes from the host exactly the edges used by an embedding, returning
/// the shrunken host. The input host is unchanged.
pub fn remove_embedding_edges(
    host: &BipartiteGraph,
    guest: &MaterializedGuest,
    embedding: &Embedding,
) -> Result<BipartiteGraph, MissingEdge> {
    host.remove_edges(embedding.used_host_edges(guest))
}
