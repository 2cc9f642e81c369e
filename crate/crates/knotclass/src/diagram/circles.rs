//! Transverse circles: embedded closed curves meeting the diagram
//! transversely in 2 or 4 points, away from nodes.
//!
//! Combinatorially a circle is a closed walk in the dual graph, one step
//! per crossing point. A walk is kept only if it can be drawn embedded:
//! within each face the connecting chords must not cross, which for arcs
//! crossed more than once depends on the order of the crossing points
//! along the arc. A valid order is chosen and stored with the circle.

use super::{ArcId, FaceId, NodeId, PlaneDiagram, PortRef};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransverseCircle {
    /// Arc crossed at each step, in order around the circle.
    pub arcs: Vec<ArcId>,
    /// faces[i] is the face occupied after crossing arcs[i], before arcs[i+1].
    pub faces: Vec<FaceId>,
    /// For arcs crossed more than once: the step indices in order along the
    /// arc's canonical direction.
    pub arc_orders: Vec<(ArcId, Vec<usize>)>,
}

impl TransverseCircle {
    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// The same circle traversed the other way.
    pub fn reversed(&self) -> TransverseCircle {
        let n = self.arcs.len();
        let arcs = (0..n).map(|i| self.arcs[n - 1 - i]).collect();
        let faces = (0..n)
            .map(|i| {
                if i == n - 1 {
                    self.faces[n - 1]
                } else {
                    self.faces[n - 2 - i]
                }
            })
            .collect();
        let arc_orders = self
            .arc_orders
            .iter()
            .map(|(a, ord)| (*a, ord.iter().map(|&s| n - 1 - s).collect()))
            .collect();
        TransverseCircle {
            arcs,
            faces,
            arc_orders,
        }
    }

    /// Rank of step `s` along its arc, per the stored order.
    fn rank(&self, s: usize) -> (usize, usize) {
        let a = self.arcs[s];
        for (arc, ord) in &self.arc_orders {
            if *arc == a {
                let r = ord.iter().position(|&x| x == s).unwrap();
                return (r, ord.len());
            }
        }
        (0, 1)
    }
}

/// Position of a crossing point on the boundary circle of a face:
/// (walk slot of the dart, offset along the dart).
type BoundaryPos = (usize, i64);

struct FaceGeometry {
    /// (arc, dir) -> (face, slot in that face's walk)
    slot_of: Vec<[(FaceId, usize); 2]>,
}

impl FaceGeometry {
    fn new(d: &PlaneDiagram) -> FaceGeometry {
        let mut slot_of = vec![[(usize::MAX, usize::MAX); 2]; d.arcs().len()];
        for face in d.faces() {
            for (slot, dart) in face.walk.iter().enumerate() {
                slot_of[dart.arc][dart.dir as usize] = (face.id, slot);
            }
        }
        FaceGeometry { slot_of }
    }

    /// Boundary position of step `s` of `c` as seen from face `f`.
    fn position(&self, d: &PlaneDiagram, c: &TransverseCircle, s: usize, f: FaceId) -> BoundaryPos {
        let a = c.arcs[s];
        let sides = d.arc_sides(a);
        let dir = if sides[0] == f { 0 } else { 1 };
        debug_assert_eq!(sides[dir], f);
        let (_, slot) = self.slot_of[a][dir];
        let (r, k) = c.rank(s);
        // Offsets run along the dart, which follows the arc's canonical
        // direction only for dir 0.
        let t = if dir == 0 {
            r as i64
        } else {
            (k - 1 - r) as i64
        };
        (slot, t)
    }
}

/// Strictly-between test on a circle of positions.
fn cyclic_between(a: BoundaryPos, x: BoundaryPos, b: BoundaryPos) -> bool {
    if a < b {
        a < x && x < b
    } else {
        x > a || x < b
    }
}

fn chords_cross(p: (BoundaryPos, BoundaryPos), q: (BoundaryPos, BoundaryPos)) -> bool {
    cyclic_between(p.0, q.0, p.1) != cyclic_between(p.0, q.1, p.1)
}

/// Chords induced in each face by the walk, as (face, entry step, exit step).
fn walk_chords(c: &TransverseCircle) -> Vec<(FaceId, usize, usize)> {
    let n = c.arcs.len();
    (0..n).map(|i| (c.faces[i], i, (i + 1) % n)).collect()
}

fn orders_realizable(d: &PlaneDiagram, geom: &FaceGeometry, c: &TransverseCircle) -> bool {
    let chords = walk_chords(c);
    let mut by_face: Vec<(FaceId, Vec<(BoundaryPos, BoundaryPos)>)> = Vec::new();
    for &(f, i, j) in &chords {
        let pi = geom.position(d, c, i, f);
        let pj = geom.position(d, c, j, f);
        match by_face.iter_mut().find(|(ff, _)| *ff == f) {
            Some((_, v)) => v.push((pi, pj)),
            None => by_face.push((f, vec![(pi, pj)])),
        }
    }
    for (_, v) in &by_face {
        for i in 0..v.len() {
            for j in (i + 1)..v.len() {
                if chords_cross(v[i], v[j]) {
                    return false;
                }
            }
        }
    }
    true
}

/// Tries every along-arc order for multiply-crossed arcs; fixes the first
/// (lexicographically) that embeds. Returns false if none does.
fn choose_orders(d: &PlaneDiagram, geom: &FaceGeometry, c: &mut TransverseCircle) -> bool {
    let n = c.arcs.len();
    let mut multi: Vec<(ArcId, Vec<usize>)> = Vec::new();
    for a in 0..d.arcs().len() {
        let steps: Vec<usize> = (0..n).filter(|&i| c.arcs[i] == a).collect();
        if steps.len() > 1 {
            multi.push((a, steps));
        }
    }
    if multi.is_empty() {
        c.arc_orders.clear();
        return orders_realizable(d, geom, c);
    }
    let mut perms: Vec<Vec<Vec<usize>>> = Vec::new();
    for (_, steps) in &multi {
        perms.push(permutations(steps));
    }
    let mut idx = vec![0usize; multi.len()];
    loop {
        c.arc_orders = multi
            .iter()
            .enumerate()
            .map(|(pos, (a, _))| (*a, perms[pos][idx[pos]].clone()))
            .collect();
        if orders_realizable(d, geom, c) {
            return true;
        }
        // advance mixed-radix counter
        let mut pos = multi.len();
        loop {
            if pos == 0 {
                return false;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < perms[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() == 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Canonical key of a walk under rotation and reversal.
fn canonical_key(arcs: &[ArcId], faces: &[FaceId]) -> Vec<(ArcId, FaceId)> {
    let n = arcs.len();
    let mut best: Option<Vec<(ArcId, FaceId)>> = None;
    let mut consider = |a: Vec<ArcId>, f: Vec<FaceId>| {
        let seq: Vec<(ArcId, FaceId)> = a.into_iter().zip(f).collect();
        if best.as_ref().map_or(true, |b| seq < *b) {
            best = Some(seq);
        }
    };
    for r in 0..n {
        let a: Vec<ArcId> = (0..n).map(|i| arcs[(i + r) % n]).collect();
        let f: Vec<FaceId> = (0..n).map(|i| faces[(i + r) % n]).collect();
        consider(a, f);
    }
    let rev = TransverseCircle {
        arcs: arcs.to_vec(),
        faces: faces.to_vec(),
        arc_orders: Vec::new(),
    }
    .reversed();
    for r in 0..n {
        let a: Vec<ArcId> = (0..n).map(|i| rev.arcs[(i + r) % n]).collect();
        let f: Vec<FaceId> = (0..n).map(|i| rev.faces[(i + r) % n]).collect();
        consider(a, f);
    }
    best.unwrap()
}

impl PlaneDiagram {
    /// All embedded transverse circles crossing the projection in `n`
    /// points, up to rotation and reflection of the listing. Length-2
    /// circles must cross two distinct arcs.
    pub fn transverse_circles(&self, n: usize) -> Vec<TransverseCircle> {
        assert!(n == 2 || n == 4, "only lengths 2 and 4 are supported");
        let geom = FaceGeometry::new(self);
        let mut seen: Vec<Vec<(ArcId, FaceId)>> = Vec::new();
        let mut out = Vec::new();

        // arcs adjacent to each face
        let mut face_arcs: Vec<Vec<ArcId>> = vec![Vec::new(); self.faces().len()];
        for (a, _) in self.arcs().iter().enumerate() {
            let [f, g] = self.arc_sides(a);
            face_arcs[f].push(a);
            if g != f {
                face_arcs[g].push(a);
            }
        }

        let mut stack_arcs = vec![0usize; n];
        let mut stack_faces = vec![0usize; n];
        for a0 in 0..self.arcs().len() {
            for side in 0..2 {
                let f0 = self.arc_sides(a0)[side];
                stack_arcs[0] = a0;
                stack_faces[0] = f0;
                self.extend_walk(
                    &geom,
                    &face_arcs,
                    &mut stack_arcs,
                    &mut stack_faces,
                    1,
                    n,
                    &mut seen,
                    &mut out,
                );
            }
        }
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn extend_walk(
        &self,
        geom: &FaceGeometry,
        face_arcs: &[Vec<ArcId>],
        arcs: &mut Vec<ArcId>,
        faces: &mut Vec<FaceId>,
        depth: usize,
        n: usize,
        seen: &mut Vec<Vec<(ArcId, FaceId)>>,
        out: &mut Vec<TransverseCircle>,
    ) {
        if depth == n {
            // must close up: crossing arcs[0] goes from faces[n-1] to faces[0]
            let start_from = {
                let [f, g] = self.arc_sides(arcs[0]);
                if faces[0] == f {
                    g
                } else {
                    f
                }
            };
            if faces[n - 1] != start_from {
                return;
            }
            if n == 2 && arcs[0] == arcs[1] {
                return;
            }
            let key = canonical_key(arcs, faces);
            if seen.contains(&key) {
                return;
            }
            let mut circ = TransverseCircle {
                arcs: arcs.clone(),
                faces: faces.clone(),
                arc_orders: Vec::new(),
            };
            if choose_orders(self, geom, &mut circ) {
                seen.push(key);
                out.push(circ);
            }
            return;
        }
        let current = faces[depth - 1];
        for &a in &face_arcs[current] {
            let [f, g] = self.arc_sides(a);
            let next = if f == current { g } else { f };
            arcs[depth] = a;
            faces[depth] = next;
            self.extend_walk(geom, face_arcs, arcs, faces, depth + 1, n, seen, out);
        }
    }

    /// Checks that a circle is a valid transverse circle of this diagram.
    pub fn validate_circle(&self, c: &TransverseCircle) -> Result<()> {
        let n = c.arcs.len();
        if n != 2 && n != 4 {
            return Err(Error::InvalidCircle);
        }
        if c.faces.len() != n {
            return Err(Error::InvalidCircle);
        }
        if n == 2 && c.arcs[0] == c.arcs[1] {
            return Err(Error::InvalidCircle);
        }
        for i in 0..n {
            let a = c.arcs[i];
            if a >= self.arcs().len() {
                return Err(Error::InvalidCircle);
            }
            let prev = c.faces[(i + n - 1) % n];
            let sides = self.arc_sides(a);
            let mut pair = [prev, c.faces[i]];
            pair.sort_unstable();
            let mut expect = sides;
            expect.sort_unstable();
            if pair != expect {
                return Err(Error::InvalidCircle);
            }
        }
        // stored orders must cover exactly the multiply-crossed arcs
        for a in 0..self.arcs().len() {
            let steps: Vec<usize> = (0..n).filter(|&i| c.arcs[i] == a).collect();
            let stored = c.arc_orders.iter().find(|(x, _)| *x == a);
            match (steps.len(), stored) {
                (0 | 1, None) => {}
                (k, Some((_, ord))) if k >= 2 => {
                    let mut s = ord.clone();
                    s.sort_unstable();
                    if s != steps {
                        return Err(Error::InvalidCircle);
                    }
                }
                _ => return Err(Error::InvalidCircle),
            }
        }
        let geom = FaceGeometry::new(self);
        if !orders_realizable(self, &geom, c) {
            return Err(Error::InvalidCircle);
        }
        Ok(())
    }

    /// Number of circle crossings on each arc, mod 2.
    fn circle_flips(&self, c: &TransverseCircle) -> Vec<bool> {
        let mut flips = vec![false; self.arcs().len()];
        for &a in &c.arcs {
            flips[a] = !flips[a];
        }
        flips
    }

    /// Splits the nodes into the two sides of the circle:
    /// (left of the walk, right of the walk).
    pub fn circle_node_sides(&self, c: &TransverseCircle) -> (Vec<NodeId>, Vec<NodeId>) {
        let parity = self.circle_parity(c);
        let left_is_one = self.left_side_parity(c, &parity);
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (n, &p) in parity.iter().enumerate() {
            if p == left_is_one {
                left.push(n);
            } else {
                right.push(n);
            }
        }
        (left, right)
    }

    /// Side parity of each node relative to the circle.
    fn circle_parity(&self, c: &TransverseCircle) -> Vec<bool> {
        let flips = self.circle_flips(c);
        let nn = self.nodes().len();
        let mut parity = vec![None; nn];
        if nn == 0 {
            return Vec::new();
        }
        parity[0] = Some(false);
        let mut queue = vec![0usize];
        while let Some(u) = queue.pop() {
            let pu = parity[u].unwrap();
            for port in 0..4 {
                let (arc, ei) = self.arc_at(PortRef { node: u, port });
                let ends = self.arcs()[arc].ends.unwrap();
                let other = ends[1 - ei as usize].node;
                let pv = pu ^ flips[arc];
                match parity[other] {
                    None => {
                        parity[other] = Some(pv);
                        queue.push(other);
                    }
                    Some(q) => debug_assert_eq!(q, pv, "circle is not null-homologous"),
                }
            }
        }
        parity.into_iter().map(|p| p.unwrap()).collect()
    }

    /// Whether the nodes left of the walk are the parity-one class.
    /// Returns `true` when the left side is the class with parity one.
    ///
    /// Walks a face boundary starting just past a chord's exit point,
    /// which lies left of the circle; the side flips at every crossing
    /// point met along the way.
    fn left_side_parity(&self, c: &TransverseCircle, parity: &[bool]) -> bool {
        let geom = FaceGeometry::new(self);
        let n = c.arcs.len();
        for i in 0..n {
            let f = c.faces[i];
            let face = &self.faces()[f];
            let len = face.walk.len();
            let entry = geom.position(self, c, i, f);
            let exit = geom.position(self, c, (i + 1) % n, f);

            // all circle crossing points on this face's boundary
            let mut events: Vec<BoundaryPos> = Vec::new();
            for j in 0..n {
                if c.faces[j] == f {
                    events.push(geom.position(self, c, j, f));
                    events.push(geom.position(self, c, (j + 1) % n, f));
                }
            }
            events.sort_unstable();
            events.dedup();

            // corners, keyed by position just past their slot
            let corner_pos = |slot: usize| -> BoundaryPos { (slot, i64::MAX) };

            // iterate events circularly starting just past `exit`
            let mut ordered: Vec<BoundaryPos> = events
                .iter()
                .copied()
                .filter(|&p| p != exit)
                .collect();
            ordered.sort_by(|&a, &b| {
                let ka = circular_key(exit, a);
                let kb = circular_key(exit, b);
                ka.partial_cmp(&kb).unwrap()
            });
            let mut side_left = true;
            let mut cursor = exit;
            for ev in ordered {
                // corners strictly between cursor and ev belong to side_left
                for k in 0..len {
                    let cp = corner_pos(k);
                    if cyclic_between(cursor, cp, ev) && side_left {
                        if let Some(head) = self.dart_head(face.walk[k]) {
                            return parity[head.node];
                        }
                    }
                }
                if ev == entry {
                    break;
                }
                side_left = !side_left;
                cursor = ev;
            }
        }
        // No corners anywhere left of the walk: the left side carries no
        // nodes, so it is whichever parity class is empty.
        let has_true = parity.iter().any(|&p| p);
        let has_false = parity.iter().any(|&p| !p);
        debug_assert!(
            !(has_true && has_false),
            "cornerless side with nodes in both parity classes"
        );
        !has_true
    }
}

/// Sort key for circular order anchored just past `origin`.
fn circular_key(origin: BoundaryPos, p: BoundaryPos) -> (u8, BoundaryPos) {
    if p > origin {
        (0, p)
    } else {
        (1, p)
    }
}
