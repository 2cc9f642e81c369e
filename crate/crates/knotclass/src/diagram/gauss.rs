//! Gauss code import for knots.
//!
//! The classic signed double-occurrence form: a cyclic sequence of nonzero
//! integers in which every value |k| appears exactly twice, once positive
//! (the over pass) and once negative (the under pass). The planar rotation
//! at each crossing is not part of the code, so the embedding is recovered
//! by searching the per-crossing chirality bits for an assignment that
//! passes the Euler check.

use super::{ArcData, Error, NodeKind, PlaneDiagram, PortPair, PortRef, Result};

const MAX_GAUSS_CROSSINGS: usize = 16;

pub fn parse_gauss(text: &str) -> Result<PlaneDiagram> {
    let entries: Vec<i64> = text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad gauss entry `{s}`")))
        })
        .collect::<Result<Vec<i64>>>()?;
    if entries.is_empty() {
        return Ok(PlaneDiagram::unknot());
    }
    if entries.iter().any(|&e| e == 0) {
        return Err(Error::Parse("gauss entries must be nonzero".into()));
    }

    let mut values: Vec<i64> = entries.iter().map(|e| e.abs()).collect();
    values.sort_unstable();
    values.dedup();
    let n = values.len();
    if entries.len() != 2 * n {
        return Err(Error::Parse(
            "each gauss value must appear exactly twice".into(),
        ));
    }
    if n > MAX_GAUSS_CROSSINGS {
        return Err(Error::Parse(format!(
            "gauss conversion supports at most {MAX_GAUSS_CROSSINGS} crossings"
        )));
    }
    let index_of = |v: i64| values.binary_search(&v.abs()).unwrap();

    // Per crossing: the positions of its two passes and the over flags.
    let mut passes: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
    for (pos, &e) in entries.iter().enumerate() {
        passes[index_of(e)].push((pos, e > 0));
    }
    for p in &passes {
        if p.len() != 2 || p[0].1 == p[1].1 {
            return Err(Error::Parse(
                "gauss value must appear once signed each way".into(),
            ));
        }
    }

    // over pair: first pass runs through ports 0-2.
    let overs: Vec<PortPair> = passes
        .iter()
        .map(|p| if p[0].1 { PortPair::P02 } else { PortPair::P13 })
        .collect();
    let first_pos: Vec<usize> = passes.iter().map(|p| p[0].0).collect();

    for bits in 0u32..(1 << n) {
        // enter/exit ports per sequence position
        let mut enter = vec![0u8; 2 * n];
        for (ci, &fp) in first_pos.iter().enumerate() {
            for &(pos, _) in &passes[ci] {
                enter[pos] = if pos == fp {
                    0
                } else if bits & (1 << ci) != 0 {
                    3
                } else {
                    1
                };
            }
        }
        let nodes: Vec<NodeKind> = overs
            .iter()
            .map(|&over| NodeKind::Crossing { over })
            .collect();
        let arcs: Vec<ArcData> = (0..2 * n)
            .map(|i| {
                let j = (i + 1) % (2 * n);
                ArcData {
                    label: i as u32 + 1,
                    ends: Some([
                        PortRef {
                            node: index_of(entries[i]),
                            port: (enter[i] + 2) % 4,
                        },
                        PortRef {
                            node: index_of(entries[j]),
                            port: enter[j],
                        },
                    ]),
                }
            })
            .collect();
        if let Ok(d) = PlaneDiagram::new(nodes, arcs) {
            return Ok(d);
        }
    }
    Err(Error::NonPlanar)
}
