//! Plane diagrams of knots, links, and single-vertex 4-valent graphs,
//! stored as combinatorial maps (rotation systems) on the 2-sphere.
//!
//! Every node has four ports listed in counterclockwise order. Faces are
//! recovered by face tracing, and construction rejects any input whose
//! trace violates the Euler formula, so an accepted diagram always embeds
//! in the sphere.

mod circles;
mod gauss;

pub use circles::TransverseCircle;

use crate::error::{Error, Result};

pub type NodeId = usize;
pub type ArcId = usize;
pub type FaceId = usize;

/// One of the two transversal port pairs of a node: ports {0,2} or {1,3}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PortPair {
    P02,
    P13,
}

impl PortPair {
    pub fn of_port(port: u8) -> PortPair {
        if port % 2 == 0 {
            PortPair::P02
        } else {
            PortPair::P13
        }
    }

    pub fn contains(self, port: u8) -> bool {
        PortPair::of_port(port) == self
    }

    pub fn flipped(self) -> PortPair {
        match self {
            PortPair::P02 => PortPair::P13,
            PortPair::P13 => PortPair::P02,
        }
    }
}

/// Node kind: a crossing with its over-strand pair, or the single vertex
/// of a graph diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Crossing { over: PortPair },
    Vertex,
}

/// A port slot on a node. Ports 0..4 run counterclockwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PortRef {
    pub node: NodeId,
    pub port: u8,
}

/// An arc of the diagram. `ends: None` marks the single free loop of the
/// crossingless unknot form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcData {
    pub label: u32,
    pub ends: Option<[PortRef; 2]>,
}

/// A directed arc. `dir = 0` runs from `ends[0]` to `ends[1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart {
    pub arc: ArcId,
    pub dir: u8,
}

impl Dart {
    pub fn reversed(self) -> Dart {
        Dart {
            arc: self.arc,
            dir: 1 - self.dir,
        }
    }
}

/// A face of the embedded diagram: its boundary walk keeps the face on
/// the left of every dart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub id: FaceId,
    pub walk: Vec<Dart>,
}

/// One pass of a strand through a node: it enters at `port` and leaves at
/// the opposite port.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Passage {
    pub node: NodeId,
    pub enter_port: u8,
}

/// A closed strand of the underlying curve: the cyclic dart walk plus the
/// node passages it makes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrandComponent {
    pub darts: Vec<Dart>,
    pub passages: Vec<Passage>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneDiagram {
    nodes: Vec<NodeKind>,
    arcs: Vec<ArcData>,
    faces: Vec<Face>,
    /// Per arc: the face left of the dir-0 dart, then left of the dir-1 dart.
    face_of: Vec<[FaceId; 2]>,
    /// Per node: the arc end sitting at each port, as (arc, end index).
    port_table: Vec<[(ArcId, u8); 4]>,
    outer_face: FaceId,
}

impl PlaneDiagram {
    /// Builds and validates a diagram from nodes and arcs.
    pub fn new(nodes: Vec<NodeKind>, arcs: Vec<ArcData>) -> Result<PlaneDiagram> {
        let free_loops = arcs.iter().filter(|a| a.ends.is_none()).count();
        if free_loops > 0 && (free_loops > 1 || !nodes.is_empty() || arcs.len() != 1) {
            return Err(Error::NonPlanar);
        }
        if nodes.iter().filter(|n| matches!(n, NodeKind::Vertex)).count() > 1 {
            return Err(Error::MultiVertex);
        }
        let mut labels: Vec<u32> = arcs.iter().map(|a| a.label).collect();
        labels.sort_unstable();
        labels.dedup();
        if labels.len() != arcs.len() {
            return Err(Error::Parse("duplicate arc label".into()));
        }
        if labels.iter().any(|&l| l == 0) {
            return Err(Error::Parse("arc labels must be positive".into()));
        }

        // Each port must hold exactly one arc end.
        let mut port_table = vec![[(usize::MAX, 0u8); 4]; nodes.len()];
        for (ai, arc) in arcs.iter().enumerate() {
            if let Some(ends) = &arc.ends {
                for (ei, end) in ends.iter().enumerate() {
                    if end.node >= nodes.len() || end.port > 3 {
                        return Err(Error::Parse("arc end out of range".into()));
                    }
                    let slot = &mut port_table[end.node][end.port as usize];
                    if slot.0 != usize::MAX {
                        return Err(Error::Parse(format!(
                            "port {} of node {} used twice",
                            end.port, end.node
                        )));
                    }
                    *slot = (ai, ei as u8);
                }
            }
        }
        for (ni, ports) in port_table.iter().enumerate() {
            if ports.iter().any(|&(a, _)| a == usize::MAX) {
                return Err(Error::Parse(format!("node {ni} has an empty port")));
            }
        }

        let (faces, face_of) = trace_faces(&arcs, &port_table);

        // Euler check. A free loop carries an implicit base point.
        let v_eff = nodes.len() + free_loops;
        let euler = v_eff as i64 - arcs.len() as i64 + faces.len() as i64;
        if !arcs.is_empty() && euler != 2 {
            return Err(Error::NonPlanar);
        }

        Ok(PlaneDiagram {
            nodes,
            arcs,
            faces,
            face_of,
            port_table,
            outer_face: 0,
        })
    }

    /// The crossingless unknot: a single free loop.
    pub fn unknot() -> PlaneDiagram {
        PlaneDiagram::new(
            Vec::new(),
            vec![ArcData {
                label: 1,
                ends: None,
            }],
        )
        .expect("free loop is valid")
    }

    pub fn nodes(&self) -> &[NodeKind] {
        &self.nodes
    }

    pub fn arcs(&self) -> &[ArcData] {
        &self.arcs
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn outer_face(&self) -> FaceId {
        self.outer_face
    }

    pub fn set_outer_face(&mut self, f: FaceId) {
        assert!(f < self.faces.len());
        self.outer_face = f;
    }

    pub fn is_free_loop(&self) -> bool {
        self.arcs.len() == 1 && self.arcs[0].ends.is_none()
    }

    pub fn crossing_count(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| matches!(n, NodeKind::Crossing { .. }))
            .count()
    }

    pub fn vertex_id(&self) -> Option<NodeId> {
        self.nodes.iter().position(|n| matches!(n, NodeKind::Vertex))
    }

    /// The arc end sitting at a port, as (arc id, end index).
    pub fn arc_at(&self, p: PortRef) -> (ArcId, u8) {
        self.port_table[p.node][p.port as usize]
    }

    pub fn arc_label(&self, a: ArcId) -> u32 {
        self.arcs[a].label
    }

    pub fn arc_by_label(&self, label: u32) -> Option<ArcId> {
        self.arcs.iter().position(|a| a.label == label)
    }

    /// The face left of a dart.
    pub fn face_left_of(&self, d: Dart) -> FaceId {
        self.face_of[d.arc][d.dir as usize]
    }

    /// The two faces flanking an arc.
    pub fn arc_sides(&self, a: ArcId) -> [FaceId; 2] {
        self.face_of[a]
    }

    pub fn dart_tail(&self, d: Dart) -> Option<PortRef> {
        self.arcs[d.arc].ends.map(|e| e[d.dir as usize])
    }

    pub fn dart_head(&self, d: Dart) -> Option<PortRef> {
        self.arcs[d.arc].ends.map(|e| e[1 - d.dir as usize])
    }

    /// The face at the corner of `node` between ports `i` and `i+1`.
    pub fn corner_face(&self, node: NodeId, i: u8) -> FaceId {
        // The face whose walk arrives at port i+1 turns through this corner.
        let p = (i + 1) % 4;
        let (arc, ei) = self.port_table[node][p as usize];
        let dir = 1 - ei; // dart whose head is this end
        self.face_left_of(Dart { arc, dir })
    }

    /// Strand components: traversal passes straight through every node.
    pub fn strand_components(&self) -> Vec<StrandComponent> {
        let mut visited = vec![false; self.arcs.len()];
        let mut out = Vec::new();
        for start in 0..self.arcs.len() {
            if visited[start] {
                continue;
            }
            if self.arcs[start].ends.is_none() {
                visited[start] = true;
                out.push(StrandComponent {
                    darts: vec![Dart { arc: start, dir: 0 }],
                    passages: Vec::new(),
                });
                continue;
            }
            let mut darts = Vec::new();
            let mut passages = Vec::new();
            let mut d = Dart { arc: start, dir: 0 };
            loop {
                visited[d.arc] = true;
                darts.push(d);
                let head = self.dart_head(d).unwrap();
                passages.push(Passage {
                    node: head.node,
                    enter_port: head.port,
                });
                let exit = PortRef {
                    node: head.node,
                    port: (head.port + 2) % 4,
                };
                let (arc, ei) = self.arc_at(exit);
                d = Dart { arc, dir: ei };
                if d.arc == start && d.dir == 0 {
                    break;
                }
            }
            out.push(StrandComponent { darts, passages });
        }
        out
    }

    /// Whether the diagram is alternating. A diagram with a vertex is
    /// alternating when at least one crossing replacement of the vertex
    /// yields an alternating link diagram.
    pub fn is_alternating(&self) -> bool {
        match self.vertex_id() {
            None => self.is_alternating_link(),
            Some(v) => [PortPair::P02, PortPair::P13].iter().any(|&over| {
                let mut nodes = self.nodes.clone();
                nodes[v] = NodeKind::Crossing { over };
                PlaneDiagram::new(nodes, self.arcs.clone())
                    .map(|d| d.is_alternating_link())
                    .unwrap_or(false)
            }),
        }
    }

    fn is_alternating_link(&self) -> bool {
        for comp in self.strand_components() {
            let overs: Vec<bool> = comp
                .passages
                .iter()
                .map(|p| match self.nodes[p.node] {
                    NodeKind::Crossing { over } => over.contains(p.enter_port),
                    NodeKind::Vertex => unreachable!("link diagram has no vertex"),
                })
                .collect();
            if overs.is_empty() {
                continue;
            }
            if overs.len() % 2 != 0 {
                return false;
            }
            for i in 0..overs.len() {
                if overs[i] == overs[(i + 1) % overs.len()] {
                    return false;
                }
            }
        }
        true
    }

    /// Flips every crossing; the rotation system is unchanged.
    pub fn mirror(&self) -> PlaneDiagram {
        let nodes = self
            .nodes
            .iter()
            .map(|n| match n {
                NodeKind::Crossing { over } => NodeKind::Crossing {
                    over: over.flipped(),
                },
                NodeKind::Vertex => NodeKind::Vertex,
            })
            .collect();
        PlaneDiagram::new(nodes, self.arcs.clone()).expect("mirror preserves validity")
    }

    /// Crossings hanging off the vertex as a removable twist: joined to
    /// the vertex by two arcs bounding a bigon, with the crossing's other
    /// two ports carrying either a single loop arc or two further arcs
    /// back to the vertex. Removing such a crossing straightens a curl of
    /// one strand, which never changes the complement; a crossing whose
    /// far legs run into the rest of the diagram is part of the pattern
    /// itself and must stay.
    pub(crate) fn vertex_bigon_crossing(&self) -> Option<(NodeId, [ArcId; 2])> {
        let v = self.vertex_id()?;
        for face in &self.faces {
            if face.walk.len() != 2 {
                continue;
            }
            let a = face.walk[0].arc;
            let b = face.walk[1].arc;
            if a == b {
                continue;
            }
            let (ea, eb) = (self.arcs[a].ends?, self.arcs[b].ends?);
            let nodes_a = [ea[0].node, ea[1].node];
            let nodes_b = [eb[0].node, eb[1].node];
            if !nodes_a.contains(&v) || !nodes_b.contains(&v) {
                continue;
            }
            let other_a = if nodes_a[0] == v { nodes_a[1] } else { nodes_a[0] };
            let other_b = if nodes_b[0] == v { nodes_b[1] } else { nodes_b[0] };
            if other_a != other_b
                || other_a == v
                || !matches!(self.nodes[other_a], NodeKind::Crossing { .. })
            {
                continue;
            }
            let c = other_a;
            // far ports of c: must hold a loop or return to the vertex
            let far_ok = (0..4u8).all(|p| {
                let (arc, ei) = self.arc_at(PortRef { node: c, port: p });
                if arc == a || arc == b {
                    return true;
                }
                let far = self.arcs[arc].ends.unwrap()[1 - ei as usize];
                far.node == c || far.node == v
            });
            if far_ok {
                return Some((c, [a, b]));
            }
        }
        None
    }

    /// No crossing has two of its four face corners in the same face; for
    /// graph diagrams a crossing hanging off the vertex across a bigon
    /// also disqualifies.
    pub fn is_reduced(&self) -> bool {
        for (ni, kind) in self.nodes.iter().enumerate() {
            if !matches!(kind, NodeKind::Crossing { .. }) {
                continue;
            }
            let corners: Vec<FaceId> = (0..4).map(|i| self.corner_face(ni, i)).collect();
            for i in 0..4 {
                for j in (i + 1)..4 {
                    if corners[i] == corners[j] {
                        return false;
                    }
                }
            }
        }
        if self.vertex_id().is_some() && self.vertex_bigon_crossing().is_some() {
            return false;
        }
        true
    }

    /// Primality: no length-2 transverse circle with crossings on both sides.
    pub fn is_prime(&self) -> Result<bool> {
        if self.vertex_id().is_some() || self.strand_components().len() != 1 {
            return Err(Error::NotAKnot);
        }
        for circ in self.transverse_circles(2) {
            let (left, right) = self.circle_node_sides(&circ);
            let lc = left
                .iter()
                .filter(|&&n| matches!(self.nodes[n], NodeKind::Crossing { .. }))
                .count();
            let rc = right
                .iter()
                .filter(|&&n| matches!(self.nodes[n], NodeKind::Crossing { .. }))
                .count();
            if lc >= 1 && rc >= 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Face tracing: from a dart arriving at port p, the walk continues along
/// the dart leaving at port p-1, keeping the face on the left.
fn trace_faces(arcs: &[ArcData], port_table: &[[(ArcId, u8); 4]]) -> (Vec<Face>, Vec<[FaceId; 2]>) {
    let mut face_of = vec![[usize::MAX; 2]; arcs.len()];
    let mut faces = Vec::new();
    for ai in 0..arcs.len() {
        for dir in 0..2u8 {
            if face_of[ai][dir as usize] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut walk = Vec::new();
            if arcs[ai].ends.is_none() {
                // Each side of a free loop is its own face.
                face_of[ai][dir as usize] = id;
                walk.push(Dart { arc: ai, dir });
                faces.push(Face { id, walk });
                continue;
            }
            let start = Dart { arc: ai, dir };
            let mut d = start;
            loop {
                face_of[d.arc][d.dir as usize] = id;
                walk.push(d);
                let head = arcs[d.arc].ends.unwrap()[1 - d.dir as usize];
                let next_port = (head.port + 3) % 4;
                let (arc, ei) = port_table[head.node][next_port as usize];
                d = Dart { arc, dir: ei };
                if d == start {
                    break;
                }
            }
            faces.push(Face { id, walk });
        }
    }
    (faces, face_of)
}

mod parse;
pub use gauss::parse_gauss;
pub use parse::{parse_diagram, DiagramFormat};

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const TREFOIL_PD: &str = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";
    pub(crate) const CLASP_PD: &str = "X(1,4,2,3) X(3,2,4,1)";

    fn pd(text: &str) -> PlaneDiagram {
        parse_diagram(text, DiagramFormat::Pd).unwrap()
    }

    #[test]
    fn trefoil_counts() {
        let d = pd(TREFOIL_PD);
        assert_eq!(d.nodes().len(), 3);
        assert_eq!(d.arcs().len(), 6);
        // Euler: 3 - 6 + F = 2
        assert_eq!(d.faces().len(), 5);
        assert_eq!(d.strand_components().len(), 1);
        assert!(d.is_alternating());
        assert!(d.is_reduced());
        assert!(d.is_prime().unwrap());
    }

    #[test]
    fn clasp_counts() {
        let d = pd(CLASP_PD);
        assert_eq!(d.faces().len(), 4);
        assert_eq!(d.strand_components().len(), 2);
        assert!(d.is_alternating());
        assert_eq!(d.is_prime(), Err(Error::NotAKnot));
    }

    #[test]
    fn crossingless_loop() {
        let d = pd("");
        assert!(d.is_free_loop());
        assert_eq!(d.faces().len(), 2);
        assert_eq!(d.strand_components().len(), 1);
        assert!(d.is_alternating());
        assert!(d.is_reduced());
        let round = parse_diagram(&d.to_pd_string(), DiagramFormat::Pd).unwrap();
        assert_eq!(round.to_pd_string(), d.to_pd_string());
    }

    #[test]
    fn triple_label_rejected() {
        let r = parse_diagram("X(1,1,1,2) X(2,3,3,4) X(4,5,5,6)", DiagramFormat::Pd);
        assert!(matches!(r, Err(Error::Parse(_))));
    }

    #[test]
    fn nonalternating_flip_detected() {
        // flip one crossing of the trefoil: list it from an over port by
        // rotating the token one step
        let d = pd("X(4,2,5,1) X(3,6,4,1) X(5,2,6,3)");
        assert!(!d.is_alternating());
    }

    #[test]
    fn mirror_involution() {
        let d = pd(TREFOIL_PD);
        let m = d.mirror();
        assert_eq!(m.mirror(), d);
        assert!(m.is_alternating());
        assert_eq!(m.faces().len(), d.faces().len());
        assert!(m.is_reduced());
        assert!(m.is_prime().unwrap());
    }

    #[test]
    fn kink_is_not_reduced() {
        // trefoil with a Reidemeister-I kink spliced into arc 1
        let d = pd("X(1,4,2,5) X(3,6,4,7) X(5,2,6,3) X(7,1,8,8)");
        assert_eq!(d.faces().len(), 6);
        assert!(!d.is_reduced());
        assert!(d.is_alternating() || !d.is_alternating()); // smoke: no panic
    }

    #[test]
    fn gauss_trefoil() {
        let d = parse_gauss("1 -2 3 -1 2 -3").unwrap();
        assert_eq!(d.nodes().len(), 3);
        assert_eq!(d.faces().len(), 5);
        assert!(d.is_alternating());
        assert!(d.is_reduced());
        assert_eq!(d.strand_components().len(), 1);
    }

    #[test]
    fn canonical_serialization_round_trip() {
        for text in [TREFOIL_PD, CLASP_PD] {
            let d = pd(text);
            let s = d.to_pd_string();
            let d2 = parse_diagram(&s, DiagramFormat::Pd).unwrap();
            assert_eq!(d2.to_pd_string(), s);
        }
    }

    #[test]
    fn circles_on_clasp() {
        let d = pd(CLASP_PD);
        // The clasp's dual graph is a 4-cycle: every two arcs share exactly
        // one face, so no embedded circle crosses the diagram in 2 points.
        assert!(d.transverse_circles(2).is_empty());
        // Separating the two crossings takes 4 points.
        let c4 = d.transverse_circles(4);
        assert!(c4.iter().any(|c| {
            let (l, r) = d.circle_node_sides(c);
            l.len() == 1 && r.len() == 1
        }));
    }

    #[test]
    fn circles_on_loop() {
        let d = pd("");
        assert!(d.transverse_circles(2).is_empty());
    }

    #[test]
    fn trefoil_has_band_circle() {
        let d = pd(TREFOIL_PD);
        let c4 = d.transverse_circles(4);
        // at least one circle has all three crossings on one side
        assert!(c4.iter().any(|c| {
            let (l, r) = d.circle_node_sides(c);
            l.len() == 3 || r.len() == 3
        }));
    }
}
