use crate::geom::predicates::edge_intersects_aabb;
use crate::geom::{Aabb, Edge, Point};
use crate::hazard::{HazardId, HazardKind, RelevantIds};
use crate::scalar::Scalar;

use super::{ProbeVerdict, RegisteredHazard};

/// Degree to which a hazard is present in a node's region. Absence from a
/// node's presence map means "not present"; only partial entries carry the
/// hazard edges (with their index in the hazard shape) that intersect the
/// node's box.
#[derive(Clone, Debug, PartialEq)]
pub enum Presence<T> {
    Partial(Vec<(u32, Edge<T>)>),
    Entire,
}

impl<T> Presence<T> {
    pub fn is_partial(&self) -> bool {
        matches!(self, Presence::Partial(_))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QtNode<T> {
    pub aabb: Aabb<T>,
    pub depth: u8,
    children: Option<Box<[QtNode<T>; 4]>>,
    /// Presence per hazard, sorted by id.
    presence: Vec<(HazardId, Presence<T>)>,
}

impl<T: Scalar> QtNode<T> {
    pub fn leaf(aabb: Aabb<T>, depth: u8) -> Self {
        Self { aabb, depth, children: None, presence: Vec::new() }
    }

    pub fn children(&self) -> Option<&[QtNode<T>; 4]> {
        self.children.as_deref()
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_none()
    }

    pub fn presence_of(&self, id: HazardId) -> Option<&Presence<T>> {
        self.presence
            .binary_search_by_key(&id, |(i, _)| *i)
            .ok()
            .map(|pos| &self.presence[pos].1)
    }

    pub fn presence_entries(&self) -> &[(HazardId, Presence<T>)] {
        &self.presence
    }

    fn set_presence(&mut self, id: HazardId, p: Presence<T>) {
        match self.presence.binary_search_by_key(&id, |(i, _)| *i) {
            Ok(pos) => self.presence[pos].1 = p,
            Err(pos) => self.presence.insert(pos, (id, p)),
        }
    }

    fn remove_presence(&mut self, id: HazardId) {
        if let Ok(pos) = self.presence.binary_search_by_key(&id, |(i, _)| *i) {
            self.presence.remove(pos);
        }
    }

    fn has_partial(&self) -> bool {
        self.presence.iter().any(|(_, p)| p.is_partial())
    }

    /// Iterates over all leaves of the subtree.
    pub fn for_each_leaf<'a>(&'a self, f: &mut impl FnMut(&'a QtNode<T>)) {
        match &self.children {
            None => f(self),
            Some(children) => children.iter().for_each(|c| c.for_each_leaf(f)),
        }
    }
}

/// Classifies a hazard's presence in `bb`, testing only `candidates` (the
/// edges known to intersect the parent's box).
///
/// The edge/box test runs against a slightly inflated box so that grazing
/// configurations land in `Partial` rather than in a definite class; a
/// definite class is only assigned when no hazard edge comes near the box,
/// in which case a single interior point decides uniformly.
fn classify<T: Scalar>(
    bb: &Aabb<T>,
    hazard: &RegisteredHazard<T>,
    candidates: &[(u32, Edge<T>)],
) -> Option<Presence<T>> {
    let inflated = bb.inflated(T::EPS);
    let on_box: Vec<(u32, Edge<T>)> = candidates
        .iter()
        .filter(|(_, e)| edge_intersects_aabb(e, &inflated))
        .copied()
        .collect();
    if !on_box.is_empty() {
        return Some(Presence::Partial(on_box));
    }
    let inside_shape = hazard.shape.contains_point(bb.center());
    let hazardous = match hazard.kind {
        HazardKind::Interior => inside_shape,
        HazardKind::Exterior => !inside_shape,
    };
    hazardous.then_some(Presence::Entire)
}

pub(super) fn register_into<T: Scalar>(
    node: &mut QtNode<T>,
    hazard: &RegisteredHazard<T>,
    candidates: &[(u32, Edge<T>)],
    max_depth: u8,
    registered: &[RegisteredHazard<T>],
) {
    match classify(&node.aabb, hazard, candidates) {
        None => {}
        Some(Presence::Entire) => {
            node.set_presence(hazard.id, Presence::Entire);
            fill_entire(node, hazard.id);
        }
        Some(Presence::Partial(edges)) => {
            if node.depth < max_depth {
                if node.children.is_none() {
                    split(node, max_depth, registered);
                }
                if let Some(children) = &mut node.children {
                    for child in children.iter_mut() {
                        register_into(child, hazard, &edges, max_depth, registered);
                    }
                }
            }
            node.set_presence(hazard.id, Presence::Partial(edges));
        }
    }
}

/// Marks the hazard entirely present in every descendant.
fn fill_entire<T: Scalar>(node: &mut QtNode<T>, id: HazardId) {
    if let Some(children) = &mut node.children {
        for child in children.iter_mut() {
            child.set_presence(id, Presence::Entire);
            fill_entire(child, id);
        }
    }
}

/// Creates the four quadrant children and pushes every existing presence
/// entry down into them.
fn split<T: Scalar>(node: &mut QtNode<T>, max_depth: u8, registered: &[RegisteredHazard<T>]) {
    let depth = node.depth + 1;
    let [sw, se, ne, nw] = node.aabb.quadrants();
    let mut children = Box::new([
        QtNode::leaf(sw, depth),
        QtNode::leaf(se, depth),
        QtNode::leaf(ne, depth),
        QtNode::leaf(nw, depth),
    ]);

    for (id, pres) in node.presence.clone() {
        match pres {
            Presence::Entire => {
                for child in children.iter_mut() {
                    child.set_presence(id, Presence::Entire);
                }
            }
            Presence::Partial(edges) => {
                let hazard = registered
                    .iter()
                    .find(|r| r.id == id)
                    .expect("partial entry for unregistered hazard");
                for child in children.iter_mut() {
                    register_into(child, hazard, &edges, max_depth, registered);
                }
            }
        }
    }
    node.children = Some(children);
}

pub(super) fn deregister_from<T: Scalar>(node: &mut QtNode<T>, id: HazardId) {
    node.remove_presence(id);
    if node.children.is_some() {
        if let Some(children) = &mut node.children {
            for child in children.iter_mut() {
                deregister_from(child, id);
            }
        }
        if !node.has_partial() {
            node.children = None;
        }
    }
}

/// Depth-first probe. `descend` decides which subtrees the probe reaches
/// (inclusive, with slack); `contact` is the exact test used before turning
/// an entirely-present hazard into a collision verdict. Returns `true` on
/// collision, otherwise extends `unresolved` with the partial entries of
/// crossed leaves.
pub(super) fn visit<T: Scalar>(
    node: &QtNode<T>,
    unresolved: &mut Vec<(HazardId, u32, Edge<T>)>,
    relevant: &RelevantIds,
    descend: &impl Fn(&Aabb<T>) -> bool,
    contact: &impl Fn(&Aabb<T>) -> bool,
) -> bool {
    if node.presence.is_empty() || !descend(&node.aabb) {
        return false;
    }
    let mut any_relevant_partial = false;
    for (id, pres) in &node.presence {
        if !relevant.contains(*id) {
            continue;
        }
        match pres {
            Presence::Entire => {
                if contact(&node.aabb) {
                    return true;
                }
            }
            Presence::Partial(_) => any_relevant_partial = true,
        }
    }
    match &node.children {
        Some(children) => {
            children.iter().any(|c| visit(c, unresolved, relevant, descend, contact))
        }
        None => {
            if any_relevant_partial {
                for (id, pres) in &node.presence {
                    if let Presence::Partial(edges) = pres {
                        if relevant.contains(*id) {
                            unresolved.extend(edges.iter().map(|(idx, e)| (*id, *idx, *e)));
                        }
                    }
                }
            }
            false
        }
    }
}

pub(super) fn visit_point<T: Scalar>(
    node: &QtNode<T>,
    p: Point<T>,
    relevant: &RelevantIds,
) -> ProbeVerdict {
    if node.presence.is_empty() || !node.aabb.contains_point(p) {
        return ProbeVerdict::Clear;
    }
    match &node.children {
        Some(children) => {
            // points on a split line belong to several closed leaves;
            // the most pessimistic leaf verdict wins
            let mut verdict = ProbeVerdict::Clear;
            for child in children.iter() {
                match visit_point(child, p, relevant) {
                    ProbeVerdict::Collision => return ProbeVerdict::Collision,
                    ProbeVerdict::Indeterminable => verdict = ProbeVerdict::Indeterminable,
                    ProbeVerdict::Clear => {}
                }
            }
            verdict
        }
        None => {
            let mut verdict = ProbeVerdict::Clear;
            for (id, pres) in &node.presence {
                if !relevant.contains(*id) {
                    continue;
                }
                match pres {
                    Presence::Entire => return ProbeVerdict::Collision,
                    Presence::Partial(_) => verdict = ProbeVerdict::Indeterminable,
                }
            }
            verdict
        }
    }
}
