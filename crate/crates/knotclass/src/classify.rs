//! Tunnel-number-one classification of reduced alternating knot diagrams.
//!
//! The decision procedure searches the diagram (and its reflection) for
//! two decompositions: a length-4 circle with a crossingless outside and
//! a rational inside (the two-bridge pattern), or a pair of disjoint
//! circles bounding rational tangles of odd denominator whose complement
//! is a two-crossing clasp (the Montesinos pattern). Each successful
//! decomposition also locates an unknotting tunnel as a planar arc.

use crate::diagram::{ArcId, FaceId, NodeId, NodeKind, PlaneDiagram, PortRef, TransverseCircle};
use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::rational::{recognize_full, LayerSequence};
use crate::tangle::{cut, BoundaryPairing, Compass, TangleDiagram, TEnd};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reason {
    Composite,
    NoPatternFound,
    NotAlternating,
    NotReduced,
}

impl Reason {
    pub fn name(self) -> &'static str {
        match self {
            Reason::Composite => "composite",
            Reason::NoPatternFound => "no-pattern-found",
            Reason::NotAlternating => "not-alternating",
            Reason::NotReduced => "not-reduced",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    TwoBridge {
        fraction: Fraction,
    },
    MontesinosTunnelOne {
        e: i64,
        t1: Fraction,
        /// +1 or -1; the clasp tangle is clasp/2.
        clasp: i8,
        t2: Fraction,
    },
    NotTunnelOne {
        reason: Reason,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub verdict: Verdict,
    pub mirrored: bool,
}

/// Where a tunnel decomposition pins the arc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlacementOrigin {
    /// Two-bridge pattern: the arc joins the two strings across the
    /// innermost core region; it can be made vertical at the innermost
    /// layer's crossing when one exists.
    RationalCore { vertical_at: Option<NodeId> },
    /// Montesinos pattern: the arc joins the two strands entering the
    /// clasp.
    Clasp { crossings: (NodeId, NodeId) },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TunnelPlacement {
    pub face: FaceId,
    /// Unordered pair of arcs carrying the tunnel endpoints (ids sorted).
    pub arcs: (ArcId, ArcId),
    pub origin: PlacementOrigin,
}

pub fn classify(d: &PlaneDiagram) -> Result<Classification> {
    classify_opts(d, true)
}

pub fn classify_opts(d: &PlaneDiagram, search_mirror: bool) -> Result<Classification> {
    if d.vertex_id().is_some() || d.strand_components().len() != 1 {
        return Err(Error::NotAKnot);
    }
    if !d.is_alternating() {
        return Ok(Classification {
            verdict: Verdict::NotTunnelOne {
                reason: Reason::NotAlternating,
            },
            mirrored: false,
        });
    }
    if !d.is_reduced() {
        return Ok(Classification {
            verdict: Verdict::NotTunnelOne {
                reason: Reason::NotReduced,
            },
            mirrored: false,
        });
    }
    if d.crossing_count() == 0 {
        return Ok(Classification {
            verdict: Verdict::TwoBridge {
                fraction: Fraction::INFINITY,
            },
            mirrored: false,
        });
    }
    if !d.is_prime()? {
        return Ok(Classification {
            verdict: Verdict::NotTunnelOne {
                reason: Reason::Composite,
            },
            mirrored: false,
        });
    }
    let mirrors: &[bool] = if search_mirror {
        &[false, true]
    } else {
        &[false]
    };
    for &mirrored in mirrors {
        let dd = if mirrored { d.mirror() } else { d.clone() };
        if let Some(found) = two_bridge_decompositions(&dd).into_iter().next() {
            return Ok(Classification {
                verdict: Verdict::TwoBridge {
                    fraction: found.fraction,
                },
                mirrored,
            });
        }
        if let Some(found) = montesinos_decompositions(&dd).into_iter().next() {
            return Ok(Classification {
                verdict: Verdict::MontesinosTunnelOne {
                    e: found.e,
                    t1: found.t1,
                    clasp: found.clasp,
                    t2: found.t2,
                },
                mirrored,
            });
        }
    }
    Ok(Classification {
        verdict: Verdict::NotTunnelOne {
            reason: Reason::NoPatternFound,
        },
        mirrored: false,
    })
}

/// Every planar-arc tunnel the exhaustive decomposition search finds,
/// deduplicated by (face, arc pair). Requires a tunnel-one verdict.
pub fn enumerate_tunnels(d: &PlaneDiagram) -> Result<Vec<TunnelPlacement>> {
    let cls = classify(d)?;
    if matches!(cls.verdict, Verdict::NotTunnelOne { .. }) {
        return Err(Error::NotTunnelOne);
    }
    if d.crossing_count() == 0 {
        return Ok(vec![TunnelPlacement {
            face: 0,
            arcs: (0, 0),
            origin: PlacementOrigin::RationalCore { vertical_at: None },
        }]);
    }
    // Decomposition sets agree between a diagram and its mirror, so the
    // search runs on the diagram as given.
    let mut placements: Vec<TunnelPlacement> = Vec::new();
    for found in two_bridge_decompositions(d) {
        push_unique(&mut placements, found.placement);
    }
    for found in montesinos_decompositions(d) {
        push_unique(&mut placements, found.placement);
    }
    Ok(placements)
}

fn push_unique(placements: &mut Vec<TunnelPlacement>, p: TunnelPlacement) {
    if !placements
        .iter()
        .any(|q| q.face == p.face && q.arcs == p.arcs)
    {
        placements.push(p);
    }
}

/// The crossing at which a tunnel can be isotoped vertical, when the
/// tangle containing it has a crossing at all.
pub fn sakuma_vertical_witness(p: &TunnelPlacement, d: &PlaneDiagram) -> Option<NodeId> {
    let _ = d;
    match &p.origin {
        PlacementOrigin::RationalCore { vertical_at } => *vertical_at,
        PlacementOrigin::Clasp { crossings } => Some(crossings.0.min(crossings.1)),
    }
}

/// Normalizes Montesinos parameters: both fractions must have odd
/// denominators; integer parts move into e.
pub fn montesinos_params(
    t1: &LayerSequence,
    clasp_sign: i8,
    t2: &LayerSequence,
) -> Result<(i64, Fraction, i8, Fraction)> {
    let f1 = crate::rational::fraction(t1);
    let f2 = crate::rational::fraction(t2);
    for f in [f1, f2] {
        if f.is_infinite() || f.denom() % 2 == 0 {
            return Err(Error::EvenDenominator);
        }
    }
    Ok((
        f1.floor() + f2.floor(),
        f1.fract(),
        clasp_sign,
        f2.fract(),
    ))
}

struct TwoBridgeFound {
    fraction: Fraction,
    placement: TunnelPlacement,
}

fn two_bridge_decompositions(d: &PlaneDiagram) -> Vec<TwoBridgeFound> {
    let mut out = Vec::new();
    for circ in d.transverse_circles(4) {
        for oriented in [circ.clone(), circ.reversed()] {
            let Ok((inside, outside)) = cut(&d.clone(), &oriented) else {
                continue;
            };
            if outside.crossing_count() != 0 {
                continue;
            }
            let Ok(pairing) = outside.boundary_pairing() else {
                continue;
            };
            let Some((seq, core)) = recognize_full(&inside) else {
                continue;
            };
            let f = crate::rational::fraction(&seq);
            let fraction = match pairing {
                BoundaryPairing::ZeroType => f,
                BoundaryPairing::InfinityType => f.invert().negate(),
                BoundaryPairing::DiagonalType => continue,
            };
            let Some((face, arcs)) = core_region(d, &seq, &core) else {
                continue;
            };
            let vertical_at = seq.layers.first().and_then(|l| l.node);
            out.push(TwoBridgeFound {
                fraction,
                placement: TunnelPlacement {
                    face,
                    arcs,
                    origin: PlacementOrigin::RationalCore { vertical_at },
                },
            });
        }
    }
    out
}

/// The parent face between the two strings of a fully peeled core, and
/// the parent arcs carrying them.
fn core_region(
    d: &PlaneDiagram,
    seq: &LayerSequence,
    core: &TangleDiagram,
) -> Option<(FaceId, (ArcId, ArcId))> {
    let prov = core.provenance()?;
    let arc_pair = |c1: Compass, c2: Compass| -> Option<(usize, bool)> {
        // (core arc index, true when ends are stored [c1, c2])
        for (ai, arc) in core.arcs().iter().enumerate() {
            match arc.ends {
                [TEnd::Boundary(a), TEnd::Boundary(b)] if a == c1 && b == c2 => {
                    return Some((ai, true))
                }
                [TEnd::Boundary(a), TEnd::Boundary(b)] if a == c2 && b == c1 => {
                    return Some((ai, false))
                }
                _ => {}
            }
        }
        None
    };
    use Compass::*;
    // For the zero core the region lies between the NW-NE and SW-SE arcs;
    // for the infinity core between NW-SW and NE-SE. The flanking side of
    // each arc follows from the stored end order; because the two
    // derivations must agree on the face, a chirality slip is self-checked.
    let (a_spec, b_spec) = match seq.core {
        crate::rational::Core::Zero => (arc_pair(NW, NE)?, arc_pair(SW, SE)?),
        crate::rational::Core::Infinity => (arc_pair(NW, SW)?, arc_pair(NE, SE)?),
    };
    let pa = prov.arcs[a_spec.0];
    let pb = prov.arcs[b_spec.0];
    let face_of = |parent_arc: ArcId, forward: bool, take_right: bool| -> FaceId {
        let sides = d.arc_sides(parent_arc);
        // sides[0] is left of the forward dart
        let idx = if forward == take_right { 1 } else { 0 };
        sides[idx]
    };
    // first arc: region on its right (zero) / left (infinity) when read
    // forward; the second arc mirrors it
    let (ra, rb) = match seq.core {
        crate::rational::Core::Zero => (true, false),
        crate::rational::Core::Infinity => (false, true),
    };
    for flip in [false, true] {
        let fa = face_of(pa, a_spec.1, ra != flip);
        let fb = face_of(pb, b_spec.1, rb != flip);
        if fa == fb {
            let arcs = (pa.min(pb), pa.max(pb));
            return Some((fa, arcs));
        }
    }
    None
}

struct MontesinosFound {
    e: i64,
    t1: Fraction,
    clasp: i8,
    t2: Fraction,
    placement: TunnelPlacement,
}

fn montesinos_decompositions(d: &PlaneDiagram) -> Vec<MontesinosFound> {
    let mut out = Vec::new();
    let n_nodes = d.nodes().len();
    if n_nodes < 8 {
        // two rational tangles of odd denominator need three crossings
        // each, plus the clasp
        return out;
    }
    let circles = d.transverse_circles(4);
    // candidate tangle sides per circle: (oriented circle, node set)
    let mut candidates: Vec<(TransverseCircle, Vec<NodeId>)> = Vec::new();
    for circ in &circles {
        let (left, right) = d.circle_node_sides(circ);
        candidates.push((circ.clone(), left));
        candidates.push((circ.reversed(), right));
    }

    for i in 0..candidates.len() {
        for j in 0..candidates.len() {
            if i == j {
                continue;
            }
            let (set1, set2) = (&candidates[i].1, &candidates[j].1);
            if set1.is_empty() || set2.is_empty() {
                continue;
            }
            if set1.len() + set2.len() != n_nodes - 2 {
                continue;
            }
            if set1.iter().any(|n| set2.contains(n)) {
                continue;
            }
            let complement: Vec<NodeId> = (0..n_nodes)
                .filter(|n| !set1.contains(n) && !set2.contains(n))
                .collect();
            let [x, y] = complement[..] else { continue };
            let Some(clasp) = clasp_structure(d, x, y, set1, set2, &candidates[i].0, &candidates[j].0)
            else {
                continue;
            };
            let Some(f1) = tangle_row_fraction(d, &candidates[i].0, clasp.t1_stubs) else {
                continue;
            };
            let Some(f2) = tangle_row_fraction(d, &candidates[j].0, clasp.t2_stubs) else {
                continue;
            };
            if !odd_denominator_tangle(f1) || !odd_denominator_tangle(f2) {
                continue;
            }
            let e = f1.floor() + f2.floor();
            out.push(MontesinosFound {
                e,
                t1: f1.fract(),
                clasp: clasp.sign,
                t2: f2.fract(),
                placement: clasp.placement,
            });
        }
    }
    out
}

/// Recognizes the inside of an oriented circle as a rational tangle and
/// reads its fraction in the Montesinos row frame, where the two arcs
/// leading to the clasp enter through an east or west boundary pair. When
/// the cut's labels have them on a north or south pair instead, the frame
/// differs by a quarter turn, which acts on fractions by F -> -1/F.
fn tangle_row_fraction(
    d: &PlaneDiagram,
    oriented: &TransverseCircle,
    stub_arcs: (ArcId, ArcId),
) -> Option<Fraction> {
    let (inside, _outside) = cut(d, oriented).ok()?;
    let (seq, _) = recognize_full(&inside)?;
    let f = crate::rational::fraction(&seq);
    let prov = inside.provenance()?;
    let mut stub_compasses: Vec<Compass> = Vec::new();
    for (ai, arc) in inside.arcs().iter().enumerate() {
        let parent = prov.arcs[ai];
        if parent != stub_arcs.0 && parent != stub_arcs.1 {
            continue;
        }
        for end in arc.ends {
            if let TEnd::Boundary(c) = end {
                stub_compasses.push(c);
            }
        }
    }
    if stub_compasses.len() != 2 {
        return None;
    }
    use Compass::*;
    let mut pair = [stub_compasses[0], stub_compasses[1]];
    pair.sort_unstable();
    match (pair[0], pair[1]) {
        (NE, SE) | (NW, SW) => Some(f),
        (NW, NE) | (SE, SW) => Some(f.invert().negate()),
        _ => None,
    }
}

fn odd_denominator_tangle(f: Fraction) -> bool {
    !f.is_infinite() && f.denom() % 2 == 1 && f.denom() > 1
}

struct ClaspMatch {
    sign: i8,
    placement: TunnelPlacement,
    /// arcs from (x, y) into the first tangle
    t1_stubs: (ArcId, ArcId),
    /// arcs from (x, y) into the second tangle
    t2_stubs: (ArcId, ArcId),
}

/// Verifies that the complement of the two tangles is a clasp: two
/// crossings joined by a bigon pair, one leg from each crossing into each
/// tangle, and two wrap arcs joining the tangles directly.
#[allow(clippy::too_many_arguments)]
fn clasp_structure(
    d: &PlaneDiagram,
    x: NodeId,
    y: NodeId,
    set1: &[NodeId],
    set2: &[NodeId],
    circ1: &TransverseCircle,
    circ2: &TransverseCircle,
) -> Option<ClaspMatch> {
    if !matches!(d.nodes()[x], NodeKind::Crossing { .. })
        || !matches!(d.nodes()[y], NodeKind::Crossing { .. })
    {
        return None;
    }
    let crossings_of = |c: &TransverseCircle, a: ArcId| c.arcs.iter().filter(|&&b| b == a).count();
    let side_of = |n: NodeId| -> u8 {
        if set1.contains(&n) {
            1
        } else if set2.contains(&n) {
            2
        } else {
            0
        }
    };
    let mut bigon_arcs: Vec<ArcId> = Vec::new();
    let mut x_stubs: Vec<(ArcId, u8, u8)> = Vec::new(); // (arc, port at x, tangle side)
    let mut y_stubs: Vec<(ArcId, u8, u8)> = Vec::new();
    let mut wraps = 0usize;
    for (ai, arc) in d.arcs().iter().enumerate() {
        let ends = arc.ends?;
        let s = [side_of(ends[0].node), side_of(ends[1].node)];
        let k1 = crossings_of(circ1, ai);
        let k2 = crossings_of(circ2, ai);
        let touches_xy = ends.iter().any(|e| e.node == x || e.node == y);
        match (s, touches_xy) {
            ([0, 0], true) => {
                // joins x and y (or a loop at one of them)
                if ends[0].node == ends[1].node || k1 + k2 != 0 {
                    return None;
                }
                bigon_arcs.push(ai);
            }
            ([0, t], true) | ([t, 0], true) if t > 0 => {
                // stub from x or y into a tangle; crossed once by its circle
                let (cnode, cport) = if s[0] == 0 {
                    (ends[0].node, ends[0].port)
                } else {
                    (ends[1].node, ends[1].port)
                };
                let expect = if t == 1 { (1, 0) } else { (0, 1) };
                if (k1, k2) != expect {
                    return None;
                }
                if cnode == x {
                    x_stubs.push((ai, cport, t));
                } else {
                    y_stubs.push((ai, cport, t));
                }
            }
            ([1, 2], false) | ([2, 1], false) => {
                if (k1, k2) != (1, 1) {
                    return None;
                }
                wraps += 1;
            }
            ([1, 1], false) => {
                if k1 + k2 != 0 {
                    return None;
                }
            }
            ([2, 2], false) => {
                if k1 + k2 != 0 {
                    return None;
                }
            }
            _ => return None,
        }
    }
    if bigon_arcs.len() != 2 || wraps != 2 || x_stubs.len() != 2 || y_stubs.len() != 2 {
        return None;
    }
    // one stub per tangle at each clasp crossing
    if x_stubs[0].2 == x_stubs[1].2 || y_stubs[0].2 == y_stubs[1].2 {
        return None;
    }
    // the bigon arcs bound a common two-sided face
    let bigon_face = d.faces().iter().find(|f| {
        f.walk.len() == 2
            && f.walk.iter().all(|dart| bigon_arcs.contains(&dart.arc))
            && f.walk[0].arc != f.walk[1].arc
    })?;
    let _ = bigon_face;
    // bigon ports adjacent at both ends, hence stub ports adjacent too
    for node in [x, y] {
        let ports: Vec<u8> = (0..4
            )
            .filter(|&p| {
                let (a, _) = d.arc_at(PortRef {
                    node,
                    port: p as u8,
                });
                bigon_arcs.contains(&a)
            })
            .map(|p| p as u8)
            .collect();
        if ports.len() != 2 {
            return None;
        }
        let adj = (ports[0] + 1) % 4 == ports[1] || (ports[1] + 1) % 4 == ports[0];
        if !adj {
            return None;
        }
    }
    // placement: the face at the clasp corner between the stub legs of the
    // lower-id crossing
    let (cnode, stubs) = if x <= y { (x, &x_stubs) } else { (y, &y_stubs) };
    let (pa, pb) = (stubs[0].1, stubs[1].1);
    let corner = if (pa + 1) % 4 == pb { pa } else { pb };
    let face = d.corner_face(cnode, corner);
    let arcs = (
        stubs[0].0.min(stubs[1].0),
        stubs[0].0.max(stubs[1].0),
    );
    // clasp sign: positive when the strand leaving the lower-id crossing
    // into the first tangle passes over
    let to_t1_port = if stubs[0].2 == 1 { stubs[0].1 } else { stubs[1].1 };
    let NodeKind::Crossing { over } = d.nodes()[cnode] else {
        return None;
    };
    let sign = if over.contains(to_t1_port) { 1 } else { -1 };
    let stub_to = |list: &[(ArcId, u8, u8)], side: u8| -> ArcId {
        list.iter().find(|s| s.2 == side).unwrap().0
    };
    Some(ClaspMatch {
        sign,
        placement: TunnelPlacement {
            face,
            arcs,
            origin: PlacementOrigin::Clasp {
                crossings: (x.min(y), x.max(y)),
            },
        },
        t1_stubs: (stub_to(&x_stubs, 1), stub_to(&y_stubs, 1)),
        t2_stubs: (stub_to(&x_stubs, 2), stub_to(&y_stubs, 2)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{close_tangle, pretzel, splice, Closure};
    use crate::diagram::{parse_diagram, DiagramFormat};
    use crate::rational::{generate, Core, Layer, LayerSequence, Side};

    fn trefoil() -> PlaneDiagram {
        parse_diagram("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)", DiagramFormat::Pd).unwrap()
    }

    /// Schubert equivalence of two-bridge fractions: equal |p| and
    /// congruent or inverse q mod p.
    pub(crate) fn two_bridge_equivalent(a: Fraction, b: Fraction) -> bool {
        let norm = |f: Fraction| -> (i64, i64) {
            if f.is_infinite() {
                return (1, 0);
            }
            let p = f.numer().abs();
            let q = if f.numer() < 0 { -f.denom() } else { f.denom() };
            if p == 0 {
                return (0, 1);
            }
            (p, q.rem_euclid(p))
        };
        let (p1, q1) = norm(a);
        let (p2, q2) = norm(b);
        if p1 != p2 {
            return false;
        }
        if p1 <= 1 {
            return true;
        }
        q1 == q2 || (q1 * q2).rem_euclid(p1) == 1
    }

    #[test]
    fn trefoil_is_two_bridge() {
        let cls = classify(&trefoil()).unwrap();
        match cls.verdict {
            Verdict::TwoBridge { fraction } => {
                assert!(
                    two_bridge_equivalent(fraction, Fraction::new(3, 1)),
                    "got {fraction}"
                );
            }
            other => panic!("expected two-bridge, got {other:?}"),
        }
    }

    #[test]
    fn unknot_is_trivial_two_bridge() {
        let d = parse_diagram("", DiagramFormat::Pd).unwrap();
        let cls = classify(&d).unwrap();
        assert_eq!(
            cls.verdict,
            Verdict::TwoBridge {
                fraction: Fraction::INFINITY
            }
        );
        let tunnels = enumerate_tunnels(&d).unwrap();
        assert_eq!(tunnels.len(), 1);
        assert_eq!(sakuma_vertical_witness(&tunnels[0], &d), None);
    }

    #[test]
    fn p323_is_montesinos() {
        let d = pretzel(&[3, 2, 3]).unwrap();
        let cls = classify(&d).unwrap();
        match cls.verdict {
            Verdict::MontesinosTunnelOne { e, t1, clasp, t2 } => {
                assert_eq!(e, 0);
                assert_eq!(t1, Fraction::new(1, 3));
                assert_eq!(t2, Fraction::new(1, 3));
                assert!(clasp == 1 || clasp == -1);
            }
            other => panic!("expected montesinos, got {other:?}"),
        }
    }

    #[test]
    fn p333_is_not_tunnel_one() {
        let d = pretzel(&[3, 3, 3]).unwrap();
        let cls = classify(&d).unwrap();
        assert_eq!(
            cls.verdict,
            Verdict::NotTunnelOne {
                reason: Reason::NoPatternFound
            }
        );
    }

    #[test]
    fn connected_sum_is_composite() {
        let t = trefoil();
        let d = splice(&t, 0, &t, 0).unwrap();
        let cls = classify(&d).unwrap();
        assert_eq!(
            cls.verdict,
            Verdict::NotTunnelOne {
                reason: Reason::Composite
            }
        );
    }

    #[test]
    fn kinked_diagram_reports_not_reduced() {
        let d = parse_diagram("X(1,4,2,5) X(3,6,4,7) X(5,2,6,3) X(7,1,8,8)", DiagramFormat::Pd)
            .unwrap();
        let cls = classify(&d).unwrap();
        assert_eq!(
            cls.verdict,
            Verdict::NotTunnelOne {
                reason: Reason::NotReduced
            }
        );
    }

    #[test]
    fn link_input_rejected() {
        let d = parse_diagram("X(1,4,2,3) X(3,2,4,1)", DiagramFormat::Pd).unwrap();
        assert_eq!(classify(&d), Err(Error::NotAKnot));
    }

    #[test]
    fn trefoil_tunnels_within_bound() {
        let d = trefoil();
        let tunnels = enumerate_tunnels(&d).unwrap();
        assert!(!tunnels.is_empty());
        assert!(tunnels.len() <= 6, "{} placements", tunnels.len());
        for t in &tunnels {
            let w = sakuma_vertical_witness(t, &d);
            assert!(w.is_some(), "trefoil tangles all carry crossings");
        }
    }

    #[test]
    fn p323_tunnel_at_clasp() {
        let d = pretzel(&[3, 2, 3]).unwrap();
        let tunnels = enumerate_tunnels(&d).unwrap();
        assert!(tunnels
            .iter()
            .any(|t| matches!(t.origin, PlacementOrigin::Clasp { .. })));
        for t in &tunnels {
            if let PlacementOrigin::Clasp { crossings } = &t.origin {
                assert_eq!(
                    sakuma_vertical_witness(t, &d),
                    Some(crossings.0),
                    "witness is the lower clasp crossing"
                );
            }
        }
    }

    #[test]
    fn mirror_coherence() {
        for d in [trefoil(), pretzel(&[3, 2, 3]).unwrap()] {
            let a = classify(&d).unwrap();
            let b = classify(&d.mirror()).unwrap();
            match (&a.verdict, &b.verdict) {
                (Verdict::TwoBridge { fraction: f1 }, Verdict::TwoBridge { fraction: f2 }) => {
                    assert_eq!(*f2, f1.negate());
                }
                (
                    Verdict::MontesinosTunnelOne {
                        e: e1,
                        t1: a1,
                        clasp: c1,
                        t2: a2,
                    },
                    Verdict::MontesinosTunnelOne {
                        e: e2,
                        t1: b1,
                        clasp: c2,
                        t2: b2,
                    },
                ) => {
                    assert_eq!(*c2, -c1);
                    // total fraction sums negate
                    let total1 = Fraction::new(
                        (*e1) * 2 * a1.denom() * a2.denom()
                            + 2 * a1.numer() * a2.denom()
                            + 2 * a2.numer() * a1.denom()
                            + (*c1 as i64) * a1.denom() * a2.denom(),
                        2 * a1.denom() * a2.denom(),
                    );
                    let total2 = Fraction::new(
                        (*e2) * 2 * b1.denom() * b2.denom()
                            + 2 * b1.numer() * b2.denom()
                            + 2 * b2.numer() * b1.denom()
                            + (*c2 as i64) * b1.denom() * b2.denom(),
                        2 * b1.denom() * b2.denom(),
                    );
                    assert_eq!(total2, total1.negate());
                }
                other => panic!("verdict kinds differ: {other:?}"),
            }
        }
    }

    #[test]
    fn montesinos_params_examples() {
        use crate::rational::fraction;
        let third = LayerSequence::new(
            Core::Infinity,
            vec![
                Layer::new(Side::Right, 1),
                Layer::new(Side::Right, 1),
                Layer::new(Side::Right, 1),
            ],
        );
        assert_eq!(fraction(&third), Fraction::new(1, 3));
        let (e, t1, c, t2) = montesinos_params(&third, 1, &third).unwrap();
        assert_eq!((e, t1, c, t2), (0, Fraction::new(1, 3), 1, Fraction::new(1, 3)));

        // 4/3 contributes 1 to e
        let four_thirds = LayerSequence::new(
            Core::Infinity,
            vec![
                Layer::new(Side::Right, 1),
                Layer::new(Side::Right, 1),
                Layer::new(Side::Right, 1),
                Layer::new(Side::Bottom, 1),
            ],
        );
        assert_eq!(fraction(&four_thirds), Fraction::new(4, 3));
        let (e, t1, _, _) = montesinos_params(&four_thirds, 1, &third).unwrap();
        assert_eq!((e, t1), (1, Fraction::new(1, 3)));

        // even denominator rejected
        let half = LayerSequence::new(
            Core::Infinity,
            vec![Layer::new(Side::Right, 1), Layer::new(Side::Right, 1)],
        );
        assert_eq!(fraction(&half), Fraction::new(1, 2));
        assert_eq!(
            montesinos_params(&half, 1, &third),
            Err(Error::EvenDenominator)
        );
    }

    #[test]
    fn two_bridge_closures_classify() {
        use crate::construct::closure_fraction;
        use crate::rational::fraction;
        // figure-eight-like: 5/2
        let s = LayerSequence::new(
            Core::Zero,
            vec![
                Layer::new(Side::Bottom, 1),
                Layer::new(Side::Right, 1),
                Layer::new(Side::Bottom, 1),
                Layer::new(Side::Right, 1),
            ],
        );
        let t = generate(&s);
        if !t.is_alternating() {
            panic!("expected alternating test tangle");
        }
        for kind in Closure::BOTH {
            let Ok(d) = close_tangle(&t, kind) else {
                continue;
            };
            if d.strand_components().len() != 1 || !d.is_reduced() || !d.is_alternating() {
                continue;
            }
            let want = closure_fraction(fraction(&s), kind);
            match classify(&d).unwrap().verdict {
                Verdict::TwoBridge { fraction: got } => {
                    assert!(
                        two_bridge_equivalent(got, want),
                        "got {got}, want {want}"
                    );
                }
                other => panic!("expected two-bridge, got {other:?}"),
            }
        }
    }
}
