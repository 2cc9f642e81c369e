//! Tangles: diagram fragments in a disc with four labeled boundary points.
//!
//! `cut` slices a diagram along a length-4 transverse circle. The four
//! crossing points become boundary points labeled NW, SW, SE, NE in the
//! order the circle walk meets them, which runs counterclockwise as seen
//! from the inside. The same points keep the same labels on the outside
//! tangle, whose own counterclockwise boundary order is therefore
//! reversed; the `Orientation` flag records which order applies.

use crate::diagram::{
    ArcId, Dart, NodeId, NodeKind, PlaneDiagram, PortPair, PortRef, TransverseCircle,
};
use crate::error::{Error, Result};

/// Boundary point labels, in serialization order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Compass {
    NW,
    NE,
    SE,
    SW,
}

impl Compass {
    pub const ALL: [Compass; 4] = [Compass::NW, Compass::NE, Compass::SE, Compass::SW];

    pub fn name(self) -> &'static str {
        match self {
            Compass::NW => "NW",
            Compass::NE => "NE",
            Compass::SE => "SE",
            Compass::SW => "SW",
        }
    }
}

/// How the two strings of a tangle join the boundary points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryPairing {
    /// NW-NE and SW-SE
    ZeroType,
    /// NW-SW and NE-SE
    InfinityType,
    /// NW-SE and NE-SW
    DiagonalType,
}

impl BoundaryPairing {
    pub fn partner(self, c: Compass) -> Compass {
        use Compass::*;
        let pairs: [(Compass, Compass); 2] = match self {
            BoundaryPairing::ZeroType => [(NW, NE), (SW, SE)],
            BoundaryPairing::InfinityType => [(NW, SW), (NE, SE)],
            BoundaryPairing::DiagonalType => [(NW, SE), (NE, SW)],
        };
        for (a, b) in pairs {
            if a == c {
                return b;
            }
            if b == c {
                return a;
            }
        }
        unreachable!()
    }

    pub fn of_pair(a: Compass, b: Compass) -> BoundaryPairing {
        use Compass::*;
        match (a.min(b), a.max(b)) {
            (NW, NE) | (SE, SW) => BoundaryPairing::ZeroType,
            (NW, SW) | (NE, SE) => BoundaryPairing::InfinityType,
            (NW, SE) | (NE, SW) => BoundaryPairing::DiagonalType,
            _ => unreachable!("distinct compass points"),
        }
    }
}

/// Counterclockwise boundary order of the tangle's own disc.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Canonical,
    Reversed,
}

impl Orientation {
    pub fn boundary_ccw(self) -> [Compass; 4] {
        use Compass::*;
        match self {
            Orientation::Canonical => [NW, SW, SE, NE],
            Orientation::Reversed => [NW, NE, SE, SW],
        }
    }
}

/// An end of a tangle arc: a node port or a boundary point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TEnd {
    Port(PortRef),
    Boundary(Compass),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TArc {
    pub label: u32,
    pub ends: [TEnd; 2],
}

/// Where the tangle's nodes and arcs came from, when cut out of a diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    /// local node -> parent node
    pub nodes: Vec<NodeId>,
    /// local arc -> parent arc (pieces of a crossed arc keep its id)
    pub arcs: Vec<ArcId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangleDiagram {
    nodes: Vec<NodeKind>,
    arcs: Vec<TArc>,
    orient: Orientation,
    provenance: Option<Provenance>,
}

/// One string of a tangle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangleString {
    pub from: Compass,
    pub to: Compass,
    pub darts: Vec<Dart>,
    pub passages: Vec<(NodeId, u8)>,
}

impl TangleDiagram {
    pub fn new(
        nodes: Vec<NodeKind>,
        arcs: Vec<TArc>,
        orient: Orientation,
        provenance: Option<Provenance>,
    ) -> Result<TangleDiagram> {
        let t = TangleDiagram {
            nodes,
            arcs,
            orient,
            provenance,
        };
        t.validate()?;
        Ok(t)
    }

    fn validate(&self) -> Result<()> {
        let mut port_seen = vec![[false; 4]; self.nodes.len()];
        let mut boundary_seen = [false; 4];
        let mut labels: Vec<u32> = self.arcs.iter().map(|a| a.label).collect();
        labels.sort_unstable();
        labels.dedup();
        if labels.len() != self.arcs.len() {
            return Err(Error::Parse("duplicate tangle arc label".into()));
        }
        for arc in &self.arcs {
            for end in arc.ends {
                match end {
                    TEnd::Port(p) => {
                        if p.node >= self.nodes.len() || p.port > 3 {
                            return Err(Error::Parse("tangle arc end out of range".into()));
                        }
                        let s = &mut port_seen[p.node][p.port as usize];
                        if *s {
                            return Err(Error::Parse("tangle port used twice".into()));
                        }
                        *s = true;
                    }
                    TEnd::Boundary(c) => {
                        let s = &mut boundary_seen[c as usize];
                        if *s {
                            return Err(Error::Parse("boundary point used twice".into()));
                        }
                        *s = true;
                    }
                }
            }
        }
        if boundary_seen != [true; 4] {
            return Err(Error::Parse("tangle must use all four boundary points".into()));
        }
        if port_seen.iter().any(|p| p.iter().any(|&s| !s)) {
            return Err(Error::Parse("tangle node has an empty port".into()));
        }
        Ok(())
    }

    pub fn nodes(&self) -> &[NodeKind] {
        &self.nodes
    }

    pub fn arcs(&self) -> &[TArc] {
        &self.arcs
    }

    pub fn orient(&self) -> Orientation {
        self.orient
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
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

    pub fn arc_end_at_port(&self, p: PortRef) -> Option<(ArcId, u8)> {
        for (ai, arc) in self.arcs.iter().enumerate() {
            for (ei, end) in arc.ends.iter().enumerate() {
                if *end == TEnd::Port(p) {
                    return Some((ai, ei as u8));
                }
            }
        }
        None
    }

    pub fn arc_end_at_boundary(&self, c: Compass) -> Option<(ArcId, u8)> {
        for (ai, arc) in self.arcs.iter().enumerate() {
            for (ei, end) in arc.ends.iter().enumerate() {
                if *end == TEnd::Boundary(c) {
                    return Some((ai, ei as u8));
                }
            }
        }
        None
    }

    /// The two strings, walked from their lowest boundary label. Closed
    /// components are an error.
    pub fn strings(&self) -> Result<Vec<TangleString>> {
        let mut visited = vec![false; self.arcs.len()];
        let mut out = Vec::new();
        for start in Compass::ALL {
            if out
                .iter()
                .any(|s: &TangleString| s.from == start || s.to == start)
            {
                continue;
            }
            let (arc, ei) = self
                .arc_end_at_boundary(start)
                .ok_or(Error::Parse("missing boundary point".into()))?;
            let mut darts = Vec::new();
            let mut passages = Vec::new();
            let mut d = Dart { arc, dir: ei };
            let to;
            loop {
                visited[d.arc] = true;
                darts.push(d);
                let head = self.arcs[d.arc].ends[1 - d.dir as usize];
                match head {
                    TEnd::Boundary(c) => {
                        to = c;
                        break;
                    }
                    TEnd::Port(p) => {
                        passages.push((p.node, p.port));
                        let exit = PortRef {
                            node: p.node,
                            port: (p.port + 2) % 4,
                        };
                        let (arc, ei) = self
                            .arc_end_at_port(exit)
                            .ok_or(Error::Parse("dangling tangle port".into()))?;
                        d = Dart { arc, dir: ei };
                    }
                }
            }
            out.push(TangleString {
                from: start,
                to,
                darts,
                passages,
            });
        }
        if out.len() != 2 || visited.iter().any(|&v| !v) {
            return Err(Error::ClosedComponentInside);
        }
        Ok(out)
    }

    pub fn boundary_pairing(&self) -> Result<BoundaryPairing> {
        let strings = self.strings()?;
        Ok(BoundaryPairing::of_pair(strings[0].from, strings[0].to))
    }

    /// Non-cyclic alternation along each string. With a vertex present,
    /// true when some crossing replacement of the vertex alternates.
    pub fn is_alternating(&self) -> bool {
        if let Some(v) = self.vertex_id() {
            return [PortPair::P02, PortPair::P13].iter().any(|&over| {
                let mut nodes = self.nodes.clone();
                nodes[v] = NodeKind::Crossing { over };
                TangleDiagram {
                    nodes,
                    arcs: self.arcs.clone(),
                    orient: self.orient,
                    provenance: None,
                }
                .is_alternating()
            });
        }
        let strings = match self.strings() {
            Ok(s) => s,
            Err(_) => return false,
        };
        for s in strings {
            let overs: Vec<bool> = s
                .passages
                .iter()
                .map(|&(node, port)| match self.nodes[node] {
                    NodeKind::Crossing { over } => over.contains(port),
                    NodeKind::Vertex => unreachable!("vertex handled above"),
                })
                .collect();
            for w in overs.windows(2) {
                if w[0] == w[1] {
                    return false;
                }
            }
        }
        true
    }

    pub fn mirror(&self) -> TangleDiagram {
        TangleDiagram {
            nodes: self
                .nodes
                .iter()
                .map(|n| match n {
                    NodeKind::Crossing { over } => NodeKind::Crossing {
                        over: over.flipped(),
                    },
                    NodeKind::Vertex => NodeKind::Vertex,
                })
                .collect(),
            arcs: self.arcs.clone(),
            orient: self.orient,
            provenance: self.provenance.clone(),
        }
    }

    /// Tangle text form: node tokens plus `B(nw,ne,se,sw)` naming the arcs
    /// at the four boundary points.
    pub fn serialize(&self) -> String {
        let mut toks = Vec::new();
        for (ni, kind) in self.nodes.iter().enumerate() {
            let labels: Vec<u32> = (0..4)
                .map(|p| {
                    let (a, _) = self
                        .arc_end_at_port(PortRef {
                            node: ni,
                            port: p as u8,
                        })
                        .expect("validated tangle");
                    self.arcs[a].label
                })
                .collect();
            let (name, starts): (char, Vec<u8>) = match kind {
                NodeKind::Crossing { over } => (
                    'X',
                    match over {
                        PortPair::P13 => vec![0, 2],
                        PortPair::P02 => vec![1, 3],
                    },
                ),
                NodeKind::Vertex => ('V', vec![0, 1, 2, 3]),
            };
            let best = starts
                .into_iter()
                .map(|s| {
                    [
                        labels[s as usize],
                        labels[(s as usize + 1) % 4],
                        labels[(s as usize + 2) % 4],
                        labels[(s as usize + 3) % 4],
                    ]
                })
                .min()
                .unwrap();
            toks.push(format!(
                "{}({},{},{},{})",
                name, best[0], best[1], best[2], best[3]
            ));
        }
        let b: Vec<u32> = Compass::ALL
            .iter()
            .map(|&c| {
                let (a, _) = self.arc_end_at_boundary(c).expect("validated tangle");
                self.arcs[a].label
            })
            .collect();
        toks.push(format!("B({},{},{},{})", b[0], b[1], b[2], b[3]));
        toks.join(" ")
    }
}

/// Parses the tangle text form; the result is in canonical orientation.
pub fn parse_tangle(text: &str) -> Result<TangleDiagram> {
    let toks: Vec<&str> = text.split_whitespace().collect();
    let mut nodes = Vec::new();
    let mut slots: Vec<(u32, TEnd)> = Vec::new();
    let mut boundary: Option<[u32; 4]> = None;
    for tok in &toks {
        let open = tok
            .find('(')
            .ok_or_else(|| Error::Parse(format!("bad token `{tok}`")))?;
        if !tok.ends_with(')') {
            return Err(Error::Parse(format!("bad token `{tok}`")));
        }
        let name = &tok[..open];
        let args: Vec<u32> = tok[open + 1..tok.len() - 1]
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad label in `{tok}`")))
            })
            .collect::<Result<Vec<u32>>>()?;
        match name {
            "X" | "V" => {
                if args.len() != 4 {
                    return Err(Error::Parse(format!("{name} needs 4 labels")));
                }
                let ni = nodes.len();
                nodes.push(if name == "X" {
                    NodeKind::Crossing {
                        over: PortPair::P13,
                    }
                } else {
                    NodeKind::Vertex
                });
                for (pi, &label) in args.iter().enumerate() {
                    slots.push((
                        label,
                        TEnd::Port(PortRef {
                            node: ni,
                            port: pi as u8,
                        }),
                    ));
                }
            }
            "B" => {
                if args.len() != 4 || boundary.is_some() {
                    return Err(Error::Parse("exactly one B(nw,ne,se,sw) token".into()));
                }
                boundary = Some([args[0], args[1], args[2], args[3]]);
            }
            _ => return Err(Error::Parse(format!("unknown token `{tok}`"))),
        }
    }
    let boundary = boundary.ok_or_else(|| Error::Parse("missing B token".into()))?;
    for (i, &label) in boundary.iter().enumerate() {
        slots.push((label, TEnd::Boundary(Compass::ALL[i])));
    }
    slots.sort_by_key(|&(l, _)| l);
    let mut arcs = Vec::new();
    let mut i = 0;
    while i < slots.len() {
        let label = slots[i].0;
        let run = slots[i..].iter().take_while(|&&(l, _)| l == label).count();
        if run != 2 {
            return Err(Error::Parse(format!(
                "label {label} appears {run} times; expected 2"
            )));
        }
        arcs.push(TArc {
            label,
            ends: [slots[i].1, slots[i + 1].1],
        });
        i += 2;
    }
    TangleDiagram::new(nodes, arcs, Orientation::Canonical, None)
}

/// Cuts a diagram along a length-4 circle into inside and outside tangles.
/// The side left of the circle walk is the inside; if the diagram has a
/// vertex the walk is reversed as needed so the vertex lands outside.
pub fn cut(d: &PlaneDiagram, circle: &TransverseCircle) -> Result<(TangleDiagram, TangleDiagram)> {
    if circle.len() != 4 || d.is_free_loop() {
        return Err(Error::InvalidCircle);
    }
    d.validate_circle(circle)?;
    let (left, _right) = d.circle_node_sides(circle);
    let circle = if let Some(v) = d.vertex_id() {
        if left.contains(&v) {
            circle.reversed()
        } else {
            circle.clone()
        }
    } else {
        circle.clone()
    };
    let (left, right) = d.circle_node_sides(&circle);

    let compass_of_step = [Compass::NW, Compass::SW, Compass::SE, Compass::NE];

    let build = |side_nodes: &[NodeId], orient: Orientation| -> Result<TangleDiagram> {
        let mut in_side = vec![false; d.nodes().len()];
        let mut node_map = vec![usize::MAX; d.nodes().len()];
        let mut nodes = Vec::new();
        let mut prov_nodes = Vec::new();
        for &n in side_nodes {
            in_side[n] = true;
            node_map[n] = nodes.len();
            nodes.push(d.nodes()[n]);
            prov_nodes.push(n);
        }
        let mut arcs: Vec<TArc> = Vec::new();
        let mut prov_arcs = Vec::new();
        let mut next_label = 1u32;
        for (ai, arc) in d.arcs().iter().enumerate() {
            let ends = arc.ends.expect("free loop rejected above");
            let steps: Vec<usize> = {
                let mut s: Vec<usize> = (0..4).filter(|&i| circle.arcs[i] == ai).collect();
                if s.len() >= 2 {
                    s = circle
                        .arc_orders
                        .iter()
                        .find(|(a, _)| *a == ai)
                        .expect("orders stored for multi-crossed arcs")
                        .1
                        .clone();
                }
                s
            };
            if steps.is_empty() {
                if in_side[ends[0].node] {
                    debug_assert!(in_side[ends[1].node]);
                    arcs.push(TArc {
                        label: next_label,
                        ends: [
                            TEnd::Port(PortRef {
                                node: node_map[ends[0].node],
                                port: ends[0].port,
                            }),
                            TEnd::Port(PortRef {
                                node: node_map[ends[1].node],
                                port: ends[1].port,
                            }),
                        ],
                    });
                    prov_arcs.push(ai);
                    next_label += 1;
                }
                continue;
            }
            // pieces alternate sides starting from ends[0]
            let mut side_here = in_side[ends[0].node];
            let k = steps.len();
            for piece in 0..=k {
                let lo: TEnd = if piece == 0 {
                    TEnd::Port(PortRef {
                        node: node_map[ends[0].node],
                        port: ends[0].port,
                    })
                } else {
                    TEnd::Boundary(compass_of_step[steps[piece - 1]])
                };
                let hi: TEnd = if piece == k {
                    TEnd::Port(PortRef {
                        node: node_map[ends[1].node],
                        port: ends[1].port,
                    })
                } else {
                    TEnd::Boundary(compass_of_step[steps[piece]])
                };
                if side_here {
                    arcs.push(TArc {
                        label: next_label,
                        ends: [lo, hi],
                    });
                    prov_arcs.push(ai);
                    next_label += 1;
                }
                side_here = !side_here;
            }
            // the final flip overshoots: the last piece sat on the side of ends[1]
            debug_assert_ne!(side_here, in_side[ends[1].node]);
        }
        TangleDiagram::new(
            nodes,
            arcs,
            orient,
            Some(Provenance {
                nodes: prov_nodes,
                arcs: prov_arcs,
            }),
        )
    };

    let inside = build(&left, Orientation::Canonical)?;
    let outside = build(&right, Orientation::Reversed)?;
    // a knot or connected graph diagram cuts into two 2-string tangles
    inside.strings()?;
    outside.strings()?;
    Ok((inside, outside))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{parse_diagram, DiagramFormat, TransverseCircle};
    use crate::rational::{fraction, recognize_rational};

    const TREFOIL_PD: &str = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";

    fn trefoil() -> PlaneDiagram {
        parse_diagram(TREFOIL_PD, DiagramFormat::Pd).unwrap()
    }

    /// Cutting the trefoil along some 4-circle leaves a crossingless
    /// outside and a rational band inside. Circles that bite a single arc
    /// four times also have a crossingless side, but their inside carries
    /// the whole knotted strand and must not be recognized.
    #[test]
    fn trefoil_band_cut() {
        let d = trefoil();
        let mut recognized = 0;
        for circ in d.transverse_circles(4) {
            for oriented in [circ.clone(), circ.reversed()] {
                let Ok((inside, outside)) = cut(&d, &oriented) else {
                    continue;
                };
                assert_eq!(
                    inside.crossing_count() + outside.crossing_count(),
                    d.crossing_count()
                );
                if outside.crossing_count() == 0 {
                    if let Some(seq) = recognize_rational(&inside) {
                        let f = fraction(&seq);
                        assert_eq!(f.numer().abs().max(f.denom().abs()), 3, "fraction {f}");
                        recognized += 1;
                    }
                }
            }
        }
        assert!(recognized >= 1, "no rational band cut found");
    }

    #[test]
    fn cut_then_glue_round_trip() {
        let d = trefoil();
        for circ in d.transverse_circles(4) {
            let Ok((inside, outside)) = cut(&d, &circ) else {
                continue;
            };
            let glued = glue(&inside, &outside).unwrap();
            assert_eq!(glued.nodes(), d.nodes());
            assert_eq!(glued.faces().len(), d.faces().len());
            assert_eq!(
                glued.strand_components().len(),
                d.strand_components().len()
            );
            assert_eq!(glued.is_alternating(), d.is_alternating());
            assert_eq!(glued.is_reduced(), d.is_reduced());
        }
    }

    #[test]
    fn fabricated_circle_rejected() {
        let d = parse_diagram("", DiagramFormat::Pd).unwrap();
        let fake = TransverseCircle {
            arcs: vec![0, 0, 0, 0],
            faces: vec![0, 1, 0, 1],
            arc_orders: vec![],
        };
        assert_eq!(cut(&d, &fake), Err(crate::error::Error::InvalidCircle));
        let t = trefoil();
        let fake2 = TransverseCircle {
            arcs: vec![0, 1, 2, 3],
            faces: vec![0, 0, 0, 0],
            arc_orders: vec![],
        };
        assert!(cut(&t, &fake2).is_err());
    }

    #[test]
    fn pairing_invariant_under_consistent_labels() {
        // cutting the same circle twice gives identical tangles
        let d = trefoil();
        let circ = &d.transverse_circles(4)[0];
        let (a1, b1) = cut(&d, circ).unwrap();
        let (a2, b2) = cut(&d, circ).unwrap();
        assert_eq!(a1, a2);
        assert_eq!(b1, b2);
    }

    #[test]
    fn cut_sides_pair_consistently() {
        // both sides of any cut of a knot diagram support a single closed
        // component: each compass point joins the two sides' strings
        let d = trefoil();
        for circ in d.transverse_circles(4) {
            let Ok((inside, outside)) = cut(&d, &circ) else {
                continue;
            };
            let si = inside.strings().unwrap();
            let so = outside.strings().unwrap();
            assert_eq!(si.len(), 2);
            assert_eq!(so.len(), 2);
        }
    }
}

/// Inverse of `cut`: joins two tangles along matching boundary labels.
/// Nodes are placed back at their parent indices when both tangles carry
/// provenance; otherwise inside nodes come first.
pub fn glue(inside: &TangleDiagram, outside: &TangleDiagram) -> Result<PlaneDiagram> {
    use crate::diagram::ArcData;

    let total_nodes = inside.nodes.len() + outside.nodes.len();
    let mut node_map_in = vec![usize::MAX; inside.nodes.len()];
    let mut node_map_out = vec![usize::MAX; outside.nodes.len()];
    let mut nodes = vec![None; total_nodes];
    match (inside.provenance(), outside.provenance()) {
        (Some(pi), Some(po)) => {
            for (l, &p) in pi.nodes.iter().enumerate() {
                node_map_in[l] = p;
            }
            for (l, &p) in po.nodes.iter().enumerate() {
                node_map_out[l] = p;
            }
        }
        _ => {
            for l in 0..inside.nodes.len() {
                node_map_in[l] = l;
            }
            for l in 0..outside.nodes.len() {
                node_map_out[l] = inside.nodes.len() + l;
            }
        }
    }
    for (l, &kind) in inside.nodes.iter().enumerate() {
        nodes[node_map_in[l]] = Some(kind);
    }
    for (l, &kind) in outside.nodes.iter().enumerate() {
        nodes[node_map_out[l]] = Some(kind);
    }
    let nodes: Vec<NodeKind> = nodes
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or(Error::Parse("provenance node indices clash".into()))?;

    // Segment ends: (is_inside, arc index) -> resolved global end or joint.
    #[derive(Clone, Copy)]
    enum GEnd {
        Port(PortRef),
        Joint(Compass),
    }
    let resolve = |_t: &TangleDiagram, map: &[usize], e: TEnd| -> GEnd {
        match e {
            TEnd::Port(p) => GEnd::Port(PortRef {
                node: map[p.node],
                port: p.port,
            }),
            TEnd::Boundary(c) => GEnd::Joint(c),
        }
    };
    // Each joint is used by exactly one inside end and one outside end.
    let mut segments: Vec<[GEnd; 2]> = Vec::new();
    for arc in &inside.arcs {
        segments.push([
            resolve(inside, &node_map_in, arc.ends[0]),
            resolve(inside, &node_map_in, arc.ends[1]),
        ]);
    }
    for arc in &outside.arcs {
        segments.push([
            resolve(outside, &node_map_out, arc.ends[0]),
            resolve(outside, &node_map_out, arc.ends[1]),
        ]);
    }
    // chain segments through joints
    let joint_users = |c: Compass, segs: &[[GEnd; 2]]| -> Vec<(usize, usize)> {
        let mut v = Vec::new();
        for (si, seg) in segs.iter().enumerate() {
            for (ei, e) in seg.iter().enumerate() {
                if matches!(e, GEnd::Joint(x) if *x == c) {
                    v.push((si, ei));
                }
            }
        }
        v
    };
    for c in Compass::ALL {
        if joint_users(c, &segments).len() != 2 {
            return Err(Error::Parse("boundary labels do not match up".into()));
        }
    }
    let mut used = vec![false; segments.len()];
    let mut arcs: Vec<ArcData> = Vec::new();
    let mut next_label = 1u32;
    for start in 0..segments.len() {
        if used[start] {
            continue;
        }
        // walk the chain from this segment in both directions to ports
        used[start] = true;
        let mut chain_ends: Vec<PortRef> = Vec::new();
        let mut closed = false;
        for dir in 0..2 {
            let mut seg = start;
            let mut end_idx = dir;
            loop {
                match segments[seg][end_idx] {
                    GEnd::Port(p) => {
                        chain_ends.push(p);
                        break;
                    }
                    GEnd::Joint(c) => {
                        let users = joint_users(c, &segments);
                        let (nseg, nei) = users
                            .into_iter()
                            .find(|&(s, e)| !(s == seg && e == end_idx))
                            .expect("joint has two users");
                        if nseg == start {
                            closed = true;
                            break;
                        }
                        used[nseg] = true;
                        seg = nseg;
                        end_idx = 1 - nei;
                    }
                }
            }
            if closed {
                break;
            }
        }
        if closed {
            // a closed chain with no ports: free loop
            arcs.push(ArcData {
                label: next_label,
                ends: None,
            });
        } else {
            debug_assert_eq!(chain_ends.len(), 2);
            arcs.push(ArcData {
                label: next_label,
                ends: Some([chain_ends[0], chain_ends[1]]),
            });
        }
        next_label += 1;
    }
    PlaneDiagram::new(nodes, arcs)
}
