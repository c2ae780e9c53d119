//! Finite windows of translation quivers.

mod structure;
mod tube;

pub use structure::*;
pub use tube::*;

use std::collections::HashMap;

use crate::error::QuiverError;
use crate::reps::DimVec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TVertex {
    pub id: String,
    pub label: Option<DimVec>,
    pub proj: bool,
    pub inj: bool,
    /// Sits on the truncation frontier; arrows beyond the window are missing.
    pub boundary: bool,
    /// Quasi-length in a tube, used for layout only.
    pub layer: Option<usize>,
}

impl TVertex {
    pub fn new(id: impl Into<String>) -> Self {
        TVertex { id: id.into(), label: None, proj: false, inj: false, boundary: false, layer: None }
    }
}

/// Vertices, a multiset of arrows and a partial translation.
///
/// `tau` may be recorded on boundary vertices when it is known; the mesh
/// condition is only enforced away from the boundary.
#[derive(Clone, Debug, Default)]
pub struct TranslationQuiver {
    vertices: Vec<TVertex>,
    vmap: HashMap<String, usize>,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
    tau: Vec<Option<usize>>,
    tau_inv: Vec<Option<usize>>,
}

impl PartialEq for TranslationQuiver {
    fn eq(&self, other: &Self) -> bool {
        if self.vertices != other.vertices {
            return false;
        }
        let sorted = |v: &Vec<usize>| {
            let mut v = v.clone();
            v.sort_unstable();
            v
        };
        (0..self.len()).all(|x| sorted(&self.succ[x]) == sorted(&other.succ[x])) && self.tau == other.tau
    }
}

impl TranslationQuiver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn add_vertex(&mut self, v: TVertex) -> Result<usize, QuiverError> {
        if self.vmap.contains_key(&v.id) {
            return Err(QuiverError::DuplicateVertex(v.id));
        }
        let k = self.vertices.len();
        self.vmap.insert(v.id.clone(), k);
        self.vertices.push(v);
        self.succ.push(Vec::new());
        self.pred.push(Vec::new());
        self.tau.push(None);
        self.tau_inv.push(None);
        Ok(k)
    }

    pub fn add_arrow(&mut self, s: usize, t: usize) {
        self.succ[s].push(t);
        self.pred[t].push(s);
    }

    /// Remove one copy of `s -> t`; returns whether one existed.
    pub fn remove_arrow(&mut self, s: usize, t: usize) -> bool {
        match self.succ[s].iter().position(|&x| x == t) {
            Some(k) => {
                self.succ[s].remove(k);
                let j = self.pred[t].iter().position(|&x| x == s).expect("adjacency in sync");
                self.pred[t].remove(j);
                true
            }
            None => false,
        }
    }

    /// Set `tau x = y`, replacing previous values on both sides.
    pub fn set_tau(&mut self, x: usize, y: usize) {
        self.clear_tau(x);
        if let Some(old) = self.tau_inv[y] {
            self.tau[old] = None;
        }
        self.tau[x] = Some(y);
        self.tau_inv[y] = Some(x);
    }

    pub fn clear_tau(&mut self, x: usize) {
        if let Some(y) = self.tau[x].take() {
            self.tau_inv[y] = None;
        }
    }

    pub fn vertex(&self, x: usize) -> &TVertex {
        &self.vertices[x]
    }

    pub fn vertex_mut(&mut self, x: usize) -> &mut TVertex {
        &mut self.vertices[x]
    }

    pub fn vertices(&self) -> &[TVertex] {
        &self.vertices
    }

    pub fn index(&self, id: &str) -> Option<usize> {
        self.vmap.get(id).copied()
    }

    pub fn id(&self, x: usize) -> &str {
        &self.vertices[x].id
    }

    pub fn succs(&self, x: usize) -> &[usize] {
        &self.succ[x]
    }

    pub fn preds(&self, x: usize) -> &[usize] {
        &self.pred[x]
    }

    pub fn tau(&self, x: usize) -> Option<usize> {
        self.tau[x]
    }

    pub fn tau_inv(&self, x: usize) -> Option<usize> {
        self.tau_inv[x]
    }

    pub fn has_arrow(&self, s: usize, t: usize) -> bool {
        self.succ[s].contains(&t)
    }

    pub fn arrows(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for s in 0..self.len() {
            for &t in &self.succ[s] {
                out.push((s, t));
            }
        }
        out
    }

    pub fn arrow_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn label(&self, x: usize) -> Option<&DimVec> {
        self.vertices[x].label.as_ref()
    }

    pub fn is_proj(&self, x: usize) -> bool {
        self.vertices[x].proj
    }

    pub fn is_inj(&self, x: usize) -> bool {
        self.vertices[x].inj
    }

    pub fn is_boundary(&self, x: usize) -> bool {
        self.vertices[x].boundary
    }

    /// Check ids, tau and the mesh condition away from the boundary.
    pub fn validate(&self) -> Result<(), QuiverError> {
        for x in 0..self.len() {
            if let Some(y) = self.tau[x] {
                if self.tau_inv[y] != Some(x) {
                    let other = self.tau_inv[y].map(|z| self.id(z).to_string()).unwrap_or_default();
                    return Err(QuiverError::TauNotInjective(self.id(x).into(), other));
                }
                if self.is_proj(x) {
                    return Err(QuiverError::TauOnProjective(self.id(x).into()));
                }
                if self.is_inj(y) {
                    return Err(QuiverError::TauInvOnInjective(self.id(y).into()));
                }
            }
        }
        for x in 0..self.len() {
            if self.is_boundary(x) || self.is_proj(x) {
                continue;
            }
            let Some(tx) = self.tau[x] else {
                return Err(QuiverError::MissingTau(self.id(x).into()));
            };
            let mut preds: Vec<usize> = self.pred[x].clone();
            let mut succs: Vec<usize> = self.succ[tx].clone();
            preds.sort_unstable();
            succs.sort_unstable();
            if preds != succs {
                return Err(QuiverError::MeshViolation {
                    vertex: self.id(x).into(),
                    preds: preds.iter().map(|&v| self.id(v).to_string()).collect(),
                    succs: succs.iter().map(|&v| self.id(v).to_string()).collect(),
                });
            }
        }
        Ok(())
    }

    /// Reverse arrows and swap `tau` with its inverse and projectives with injectives.
    pub fn reversed(&self) -> TranslationQuiver {
        let mut out = self.clone();
        std::mem::swap(&mut out.succ, &mut out.pred);
        std::mem::swap(&mut out.tau, &mut out.tau_inv);
        for v in out.vertices.iter_mut() {
            std::mem::swap(&mut v.proj, &mut v.inj);
        }
        out
    }

    pub fn disjoint_union(&self, other: &TranslationQuiver) -> Result<TranslationQuiver, QuiverError> {
        let mut out = self.clone();
        let shift = self.len();
        for v in &other.vertices {
            out.add_vertex(v.clone())?;
        }
        for (s, t) in other.arrows() {
            out.add_arrow(s + shift, t + shift);
        }
        for x in 0..other.len() {
            if let Some(y) = other.tau[x] {
                out.set_tau(x + shift, y + shift);
            }
        }
        Ok(out)
    }

    /// Drop the given vertices and everything attached to them.
    pub fn remove_vertices(&self, drop: &[usize]) -> TranslationQuiver {
        let gone: std::collections::HashSet<usize> = drop.iter().copied().collect();
        let mut out = TranslationQuiver::new();
        let mut map = vec![None; self.len()];
        for x in 0..self.len() {
            if !gone.contains(&x) {
                map[x] = Some(out.add_vertex(self.vertices[x].clone()).expect("unique ids"));
            }
        }
        for (s, t) in self.arrows() {
            if let (Some(a), Some(b)) = (map[s], map[t]) {
                out.add_arrow(a, b);
            }
        }
        for x in 0..self.len() {
            if let (Some(a), Some(b)) = (map[x], self.tau[x].and_then(|y| map[y])) {
                out.set_tau(a, b);
            }
        }
        out
    }

    /// Rename a vertex.
    pub fn rename(&mut self, x: usize, id: String) -> Result<(), QuiverError> {
        if self.vmap.contains_key(&id) {
            return Err(QuiverError::DuplicateVertex(id));
        }
        let old = std::mem::replace(&mut self.vertices[x].id, id.clone());
        self.vmap.remove(&old);
        self.vmap.insert(id, x);
        Ok(())
    }
}
