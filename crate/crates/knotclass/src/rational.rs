//! Rational tangles as stacks of single-crossing annular layers around a
//! crossingless core, recognized by peeling layers off the boundary.
//!
//! Layer vocabulary: `bottom` and `top` layers shift the tangle fraction
//! by the layer sign, `left` and `right` layers act through the
//! reciprocal, F -> 1/(1/F + s). In the canonical boundary order
//! [NW, SW, SE, NE] a bottom layer's crossing hangs on the (SE, NE) pair,
//! a top layer on (NW, SW), a left layer on (NE, NW) and a right layer on
//! (SW, SE). A layer has sign +1 when the strand entering from the pair's
//! SW or NE point passes over.

use crate::diagram::{NodeKind, PortPair, PortRef};
use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::tangle::{BoundaryPairing, Compass, Orientation, TArc, TEnd, TangleDiagram};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Bottom,
    Top,
    Left,
    Right,
}

impl Side {
    pub const ALL: [Side; 4] = [Side::Bottom, Side::Top, Side::Left, Side::Right];

    /// The ccw-adjacent boundary pair (X, Y) the layer's crossing joins,
    /// in the tangle's own boundary order.
    fn pair(self, orient: Orientation) -> (Compass, Compass) {
        use Compass::*;
        let (x, y) = match self {
            Side::Top => (NW, SW),
            Side::Right => (SW, SE),
            Side::Bottom => (SE, NE),
            Side::Left => (NE, NW),
        };
        match orient {
            Orientation::Canonical => (x, y),
            Orientation::Reversed => (y, x),
        }
    }

    /// The pair point carrying the sign convention.
    fn sign_corner(self) -> Compass {
        match self {
            Side::Top | Side::Right => Compass::SW,
            Side::Bottom | Side::Left => Compass::NE,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Side::Bottom => "bottom",
            Side::Top => "top",
            Side::Left => "left",
            Side::Right => "right",
        }
    }

    /// Flype image: top and bottom twists are interchangeable, as are
    /// left and right.
    pub fn flype_canonical(self) -> Side {
        match self {
            Side::Top | Side::Bottom => Side::Bottom,
            Side::Left | Side::Right => Side::Right,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Layer {
    pub side: Side,
    pub sign: i8,
    /// When recognized by peeling: the crossing this layer came from
    /// (parent diagram id if the tangle has provenance).
    pub node: Option<usize>,
}

impl Layer {
    pub fn new(side: Side, sign: i8) -> Layer {
        assert!(sign == 1 || sign == -1);
        Layer {
            side,
            sign,
            node: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Core {
    Zero,
    Infinity,
}

/// Layers are listed innermost first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerSequence {
    pub core: Core,
    pub layers: Vec<Layer>,
}

impl LayerSequence {
    pub fn new(core: Core, layers: Vec<Layer>) -> LayerSequence {
        LayerSequence { core, layers }
    }

    pub fn crossing_count(&self) -> usize {
        self.layers.len()
    }
}

/// Continued-fraction value of a layer sequence, evaluated innermost out.
pub fn fraction(seq: &LayerSequence) -> Fraction {
    let mut f = match seq.core {
        Core::Zero => Fraction::ZERO,
        Core::Infinity => Fraction::INFINITY,
    };
    for layer in &seq.layers {
        let s = layer.sign as i64;
        f = match layer.side {
            Side::Bottom | Side::Top => f.add_int(s),
            Side::Left | Side::Right => f.invert().add_int(s).invert(),
        };
    }
    f
}

/// Builds the tangle of a layer sequence, innermost out, in canonical
/// orientation. The result need not be alternating; callers check.
pub fn generate(seq: &LayerSequence) -> TangleDiagram {
    use Compass::*;
    let mut nodes: Vec<NodeKind> = Vec::new();
    let mut arcs: Vec<TArc> = Vec::new();
    let mut next_label = 1u32;
    let mut fresh = |arcs: &mut Vec<TArc>, ends: [TEnd; 2]| {
        arcs.push(TArc {
            label: next_label,
            ends,
        });
        next_label += 1;
    };
    match seq.core {
        Core::Zero => {
            fresh(&mut arcs, [TEnd::Boundary(NW), TEnd::Boundary(NE)]);
            fresh(&mut arcs, [TEnd::Boundary(SW), TEnd::Boundary(SE)]);
        }
        Core::Infinity => {
            fresh(&mut arcs, [TEnd::Boundary(NW), TEnd::Boundary(SW)]);
            fresh(&mut arcs, [TEnd::Boundary(NE), TEnd::Boundary(SE)]);
        }
    }
    for layer in &seq.layers {
        let (x, y) = layer.side.pair(Orientation::Canonical);
        let c = nodes.len();
        // rewire the old boundary ends onto the new crossing
        let replace = |arcs: &mut Vec<TArc>, at: Compass, port: u8| {
            for arc in arcs.iter_mut() {
                for end in arc.ends.iter_mut() {
                    if *end == TEnd::Boundary(at) {
                        *end = TEnd::Port(PortRef { node: c, port });
                        return;
                    }
                }
            }
            unreachable!("boundary point {at:?} present");
        };
        replace(&mut arcs, y, 2);
        replace(&mut arcs, x, 3);
        fresh(
            &mut arcs,
            [TEnd::Port(PortRef { node: c, port: 0 }), TEnd::Boundary(x)],
        );
        fresh(
            &mut arcs,
            [TEnd::Port(PortRef { node: c, port: 1 }), TEnd::Boundary(y)],
        );
        let corner_port = if layer.side.sign_corner() == x { 0u8 } else { 1u8 };
        let corner_pair = PortPair::of_port(corner_port);
        let over = if layer.sign > 0 {
            corner_pair
        } else {
            corner_pair.flipped()
        };
        nodes.push(NodeKind::Crossing { over });
    }
    TangleDiagram::new(nodes, arcs, Orientation::Canonical, None).expect("generated tangle is valid")
}

/// One peeling step: detaches a crossing whose strands run straight to an
/// adjacent boundary pair. Crossings are tried in id order, sides in the
/// order bottom, top, left, right.
///
/// A crossing normally meets its boundary pair in matching cyclic order
/// (an annular layer). A crossing meeting the pair in reversed order is a
/// curl: one leg winds around the rest of the tangle. It unwinds along
/// its own strand, so the strands reconnect transversally; these are
/// tried only after every plain layer option is exhausted.
pub fn peel(t: &TangleDiagram) -> Option<(Layer, TangleDiagram)> {
    peel_pass(t, false).or_else(|| peel_pass(t, true))
}

fn peel_pass(t: &TangleDiagram, reversed: bool) -> Option<(Layer, TangleDiagram)> {
    let flip_sign = matches!(t.orient(), Orientation::Reversed);
    for c in 0..t.nodes().len() {
        let NodeKind::Crossing { over } = t.nodes()[c] else {
            continue;
        };
        for side in Side::ALL {
            let (x, y) = side.pair(t.orient());
            let Some((ax, _)) = t.arc_end_at_boundary(x) else {
                continue;
            };
            let Some((ay, _)) = t.arc_end_at_boundary(y) else {
                continue;
            };
            let other = |arc: usize, want_boundary: Compass| -> Option<PortRef> {
                let arc = &t.arcs()[arc];
                match arc.ends {
                    [TEnd::Boundary(b), TEnd::Port(p)] if b == want_boundary => Some(p),
                    [TEnd::Port(p), TEnd::Boundary(b)] if b == want_boundary => Some(p),
                    _ => None,
                }
            };
            let Some(px) = other(ax, x) else { continue };
            let Some(py) = other(ay, y) else { continue };
            if px.node != c || py.node != c {
                continue;
            }
            let (to_x_port, to_y_port) = if !reversed && py.port == (px.port + 1) % 4 {
                // annulus removal: the freed strands swap over
                ((px.port + 3) % 4, (py.port + 1) % 4)
            } else if reversed && px.port == (py.port + 1) % 4 {
                // curl removal: each strand continues straight through
                ((px.port + 2) % 4, (py.port + 2) % 4)
            } else {
                continue;
            };
            // sign from the corner strand
            let corner_port = if side.sign_corner() == x {
                px.port
            } else {
                py.port
            };
            let mut positive = over.contains(corner_port);
            if flip_sign {
                positive = !positive;
            }
            let layer = Layer {
                side,
                sign: if positive { 1 } else { -1 },
                node: Some(
                    t.provenance()
                        .map(|p| p.nodes[c])
                        .unwrap_or(c),
                ),
            };
            let peeled = remove_crossing(t, c, ax, ay, to_x_port, to_y_port, x, y);
            return Some((layer, peeled));
        }
    }
    None
}

#[allow(clippy::too_many_arguments)]
fn remove_crossing(
    t: &TangleDiagram,
    c: usize,
    ax: usize,
    ay: usize,
    to_x_port: u8,
    to_y_port: u8,
    x: Compass,
    y: Compass,
) -> TangleDiagram {
    // the freed strands take over the vacated boundary points
    let to_x = PortRef {
        node: c,
        port: to_x_port,
    };
    let to_y = PortRef {
        node: c,
        port: to_y_port,
    };
    let mut nodes = Vec::new();
    let mut node_map = vec![usize::MAX; t.nodes().len()];
    let mut prov_nodes = Vec::new();
    for (ni, &kind) in t.nodes().iter().enumerate() {
        if ni == c {
            continue;
        }
        node_map[ni] = nodes.len();
        nodes.push(kind);
        prov_nodes.push(t.provenance().map(|p| p.nodes[ni]).unwrap_or(ni));
    }
    let mut arcs = Vec::new();
    let mut prov_arcs = Vec::new();
    for (ai, arc) in t.arcs().iter().enumerate() {
        if ai == ax || ai == ay {
            continue;
        }
        let map_end = |e: TEnd| -> TEnd {
            match e {
                TEnd::Port(p) if p == to_x => TEnd::Boundary(x),
                TEnd::Port(p) if p == to_y => TEnd::Boundary(y),
                TEnd::Port(p) => {
                    debug_assert_ne!(p.node, c, "only the freed ports touch the crossing");
                    TEnd::Port(PortRef {
                        node: node_map[p.node],
                        port: p.port,
                    })
                }
                b => b,
            }
        };
        arcs.push(TArc {
            label: arc.label,
            ends: [map_end(arc.ends[0]), map_end(arc.ends[1])],
        });
        prov_arcs.push(t.provenance().map(|p| p.arcs[ai]).unwrap_or(ai));
    }
    TangleDiagram::new(
        nodes,
        arcs,
        t.orient(),
        Some(crate::tangle::Provenance {
            nodes: prov_nodes,
            arcs: prov_arcs,
        }),
    )
    .expect("peeling preserves validity")
}

/// Peels the tangle completely. Returns the recognized sequence and the
/// crossingless core tangle, or None when peeling stalls or the residue
/// is not a plain core.
pub fn recognize_full(t: &TangleDiagram) -> Option<(LayerSequence, TangleDiagram)> {
    if t.vertex_id().is_some() {
        return None;
    }
    let mut work = t.clone();
    let mut outermost_first: Vec<Layer> = Vec::new();
    while work.crossing_count() > 0 {
        match peel(&work) {
            Some((layer, rest)) => {
                outermost_first.push(layer);
                work = rest;
            }
            None => return None,
        }
    }
    let core = match work.boundary_pairing().ok()? {
        BoundaryPairing::ZeroType => Core::Zero,
        BoundaryPairing::InfinityType => Core::Infinity,
        BoundaryPairing::DiagonalType => return None,
    };
    outermost_first.reverse();
    Some((
        LayerSequence {
            core,
            layers: outermost_first,
        },
        work,
    ))
}

pub fn recognize_rational(t: &TangleDiagram) -> Option<LayerSequence> {
    recognize_full(t).map(|(seq, _)| seq)
}

/// Regenerates the recognized tangle with every layer moved to its flype
/// image side (top -> bottom, left -> right). The fraction is unchanged.
pub fn flype_normalize(t: &TangleDiagram) -> Result<TangleDiagram> {
    let seq = recognize_rational(t).ok_or(Error::NotRational)?;
    let layers = seq
        .layers
        .iter()
        .map(|l| Layer {
            side: l.side.flype_canonical(),
            sign: l.sign,
            node: None,
        })
        .collect();
    Ok(generate(&LayerSequence {
        core: seq.core,
        layers,
    }))
}

/// Text form `core=0|inf; layers=bottom+,right-,...`.
pub fn parse_layer_sequence(text: &str) -> Result<LayerSequence> {
    let mut core = None;
    let mut layers = Vec::new();
    for part in text.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        if let Some(rest) = part.strip_prefix("core=") {
            core = Some(match rest.trim() {
                "0" => Core::Zero,
                "inf" => Core::Infinity,
                other => return Err(Error::Parse(format!("unknown core `{other}`"))),
            });
        } else if let Some(rest) = part.strip_prefix("layers=") {
            for item in rest.split(',') {
                let item = item.trim();
                if item.is_empty() {
                    continue;
                }
                let (side_name, sign) = item.split_at(item.len() - 1);
                let side = match side_name {
                    "bottom" => Side::Bottom,
                    "top" => Side::Top,
                    "left" => Side::Left,
                    "right" => Side::Right,
                    other => return Err(Error::Parse(format!("unknown side `{other}`"))),
                };
                let sign = match sign {
                    "+" => 1,
                    "-" => -1,
                    other => return Err(Error::Parse(format!("bad sign `{other}`"))),
                };
                layers.push(Layer::new(side, sign));
            }
        } else {
            return Err(Error::Parse(format!("unknown field `{part}`")));
        }
    }
    Ok(LayerSequence {
        core: core.ok_or_else(|| Error::Parse("missing core=".into()))?,
        layers,
    })
}

pub fn layer_sequence_to_string(seq: &LayerSequence) -> String {
    let core = match seq.core {
        Core::Zero => "0",
        Core::Infinity => "inf",
    };
    let layers: Vec<String> = seq
        .layers
        .iter()
        .map(|l| format!("{}{}", l.side.name(), if l.sign > 0 { "+" } else { "-" }))
        .collect();
    format!("core={}; layers={}", core, layers.join(","))
}

/// All alternating layer sequences with up to `max_layers` layers, over
/// both cores. With `canonical_sides` only bottom and right layers are
/// used, one representative per flype class.
pub fn enumerate_admissible(max_layers: usize, canonical_sides: bool) -> Vec<LayerSequence> {
    let sides: &[Side] = if canonical_sides {
        &[Side::Bottom, Side::Right]
    } else {
        &Side::ALL
    };
    let mut out = Vec::new();
    for core in [Core::Zero, Core::Infinity] {
        let mut seq = LayerSequence {
            core,
            layers: Vec::new(),
        };
        out.push(seq.clone());
        extend(&mut seq, sides, max_layers, &mut out);
    }
    out
}

fn extend(seq: &mut LayerSequence, sides: &[Side], max: usize, out: &mut Vec<LayerSequence>) {
    if seq.layers.len() == max {
        return;
    }
    for &side in sides {
        for sign in [1i8, -1] {
            seq.layers.push(Layer::new(side, sign));
            if generate(seq).is_alternating() {
                out.push(seq.clone());
                extend(seq, sides, max, out);
            }
            seq.layers.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(core: Core, layers: &[(Side, i8)]) -> LayerSequence {
        LayerSequence {
            core,
            layers: layers.iter().map(|&(s, g)| Layer::new(s, g)).collect(),
        }
    }

    /// Independent continued-fraction oracle over plain integers.
    fn cf_oracle(core: Core, layers: &[(Side, i8)]) -> (i64, i64) {
        let (mut p, mut q) = match core {
            Core::Zero => (0i64, 1i64),
            Core::Infinity => (1, 0),
        };
        for &(side, s) in layers {
            let s = s as i64;
            match side {
                Side::Bottom | Side::Top => p += s * q,
                Side::Left | Side::Right => {
                    // 1/(q/p + s) = p / (q + s p)
                    q += s * p;
                }
            }
            let g = gcd(p.abs(), q.abs());
            if g > 1 {
                p /= g;
                q /= g;
            }
            if q < 0 {
                p = -p;
                q = -q;
            }
        }
        (p, q)
    }

    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    #[test]
    fn fraction_examples() {
        assert_eq!(fraction(&seq(Core::Zero, &[])), Fraction::ZERO);
        assert_eq!(
            fraction(&seq(Core::Zero, &[(Side::Bottom, 1)])),
            Fraction::new(1, 1)
        );
        // 1 + 1/(1 + 1/1) = 3/2
        assert_eq!(
            fraction(&seq(
                Core::Zero,
                &[(Side::Bottom, 1), (Side::Right, 1), (Side::Bottom, 1)]
            )),
            Fraction::new(3, 2)
        );
    }

    #[test]
    fn fraction_matches_oracle() {
        for s in enumerate_admissible(5, false) {
            let pairs: Vec<(Side, i8)> = s.layers.iter().map(|l| (l.side, l.sign)).collect();
            let (p, q) = cf_oracle(s.core, &pairs);
            assert_eq!(fraction(&s), Fraction::new(p, q), "sequence {s:?}");
        }
    }

    #[test]
    fn single_bottom_is_diagonal() {
        let t = generate(&seq(Core::Zero, &[(Side::Bottom, 1)]));
        assert_eq!(t.crossing_count(), 1);
        assert_eq!(t.boundary_pairing().unwrap(), BoundaryPairing::DiagonalType);
        assert!(t.is_alternating());
    }

    #[test]
    fn cores_have_their_pairings() {
        let z = generate(&seq(Core::Zero, &[]));
        assert_eq!(z.boundary_pairing().unwrap(), BoundaryPairing::ZeroType);
        let i = generate(&seq(Core::Infinity, &[]));
        assert_eq!(i.boundary_pairing().unwrap(), BoundaryPairing::InfinityType);
    }

    #[test]
    fn peel_single_crossing() {
        let t = generate(&seq(Core::Zero, &[(Side::Bottom, 1)]));
        let (layer, rest) = peel(&t).unwrap();
        assert_eq!(layer.side, Side::Bottom);
        assert_eq!(layer.sign, 1);
        assert_eq!(rest.crossing_count(), 0);
        assert_eq!(peel(&rest.clone()).is_none(), true);
    }

    #[test]
    fn round_trip_small() {
        for s in enumerate_admissible(6, false) {
            let t = generate(&s);
            let r = recognize_rational(&t).expect("generated tangles are rational");
            assert_eq!(
                fraction(&r),
                fraction(&s),
                "round trip for {}",
                layer_sequence_to_string(&s)
            );
        }
    }

    #[test]
    fn flype_preserves_fraction() {
        for s in enumerate_admissible(5, false) {
            let t = generate(&s);
            let n = flype_normalize(&t).unwrap();
            let r = recognize_rational(&n).unwrap();
            assert_eq!(fraction(&r), fraction(&s));
        }
    }

    #[test]
    fn mirror_negates_fraction() {
        for s in enumerate_admissible(5, false) {
            let t = generate(&s);
            let m = t.mirror();
            let r = recognize_rational(&m).expect("mirror of rational is rational");
            assert_eq!(fraction(&r), fraction(&s).negate());
        }
    }

    #[test]
    fn spanning_clasp_is_not_rational() {
        // two crossings, each touching only opposite boundary corners
        use crate::diagram::NodeKind;
        use Compass::*;
        let nodes = vec![
            NodeKind::Crossing {
                over: PortPair::P02,
            },
            NodeKind::Crossing {
                over: PortPair::P02,
            },
        ];
        let p = |node: usize, port: u8| TEnd::Port(PortRef { node, port });
        let arcs = vec![
            TArc {
                label: 1,
                ends: [TEnd::Boundary(NW), p(0, 0)],
            },
            TArc {
                label: 2,
                ends: [TEnd::Boundary(SE), p(0, 3)],
            },
            TArc {
                label: 3,
                ends: [TEnd::Boundary(SW), p(1, 0)],
            },
            TArc {
                label: 4,
                ends: [TEnd::Boundary(NE), p(1, 3)],
            },
            TArc {
                label: 5,
                ends: [p(0, 2), p(1, 1)],
            },
            TArc {
                label: 6,
                ends: [p(0, 1), p(1, 2)],
            },
        ];
        let t = TangleDiagram::new(nodes, arcs, Orientation::Canonical, None).unwrap();
        assert_eq!(t.crossing_count(), 2);
        assert!(peel(&t).is_none());
        assert!(recognize_rational(&t).is_none());
    }

    #[test]
    fn sequence_text_round_trip() {
        let s = parse_layer_sequence("core=0; layers=bottom+,right+,bottom+").unwrap();
        assert_eq!(fraction(&s), Fraction::new(3, 2));
        assert_eq!(
            layer_sequence_to_string(&s),
            "core=0; layers=bottom+,right+,bottom+"
        );
        assert!(parse_layer_sequence("core=inf; layers=").is_ok());
        assert!(parse_layer_sequence("layers=bottom+").is_err());
    }
}
