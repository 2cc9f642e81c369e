//! PD text format.
//!
//! A diagram is a whitespace-separated list of tokens. `X(a,b,c,d)` is a
//! crossing with arc labels listed counterclockwise starting at an
//! under-strand port; `V(a,b,c,d)` is the vertex (any starting port); the
//! crossingless unknot is the single token `L(a)`. Every label appears at
//! exactly two port slots.

use super::{ArcData, Error, NodeKind, PlaneDiagram, PortPair, PortRef, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagramFormat {
    Pd,
    Gauss,
}

pub fn parse_diagram(text: &str, format: DiagramFormat) -> Result<PlaneDiagram> {
    match format {
        DiagramFormat::Pd => parse_pd(text),
        DiagramFormat::Gauss => super::gauss::parse_gauss(text),
    }
}

fn parse_token(tok: &str) -> Result<(char, Vec<u32>)> {
    let open = tok
        .find('(')
        .ok_or_else(|| Error::Parse(format!("bad token `{tok}`")))?;
    if !tok.ends_with(')') || open == 0 {
        return Err(Error::Parse(format!("bad token `{tok}`")));
    }
    let name = &tok[..open];
    if name.len() != 1 {
        return Err(Error::Parse(format!("unknown token `{name}`")));
    }
    let args = tok[open + 1..tok.len() - 1]
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad label in `{tok}`")))
        })
        .collect::<Result<Vec<u32>>>()?;
    if args.iter().any(|&a| a == 0) {
        return Err(Error::Parse(format!("labels must be positive in `{tok}`")));
    }
    Ok((name.chars().next().unwrap(), args))
}

fn parse_pd(text: &str) -> Result<PlaneDiagram> {
    let toks: Vec<&str> = text.split_whitespace().collect();
    if toks.is_empty() {
        return Ok(PlaneDiagram::unknot());
    }
    let mut nodes: Vec<NodeKind> = Vec::new();
    let mut token_labels: Vec<[u32; 4]> = Vec::new();
    let mut loop_label: Option<u32> = None;
    for tok in &toks {
        let (name, args) = parse_token(tok)?;
        match name {
            'X' => {
                if args.len() != 4 {
                    return Err(Error::Parse(format!("X needs 4 labels in `{tok}`")));
                }
                // Listing starts at an under-strand port, so ports 1 and 3
                // carry the over strand.
                nodes.push(NodeKind::Crossing {
                    over: PortPair::P13,
                });
                token_labels.push([args[0], args[1], args[2], args[3]]);
            }
            'V' => {
                if args.len() != 4 {
                    return Err(Error::Parse(format!("V needs 4 labels in `{tok}`")));
                }
                nodes.push(NodeKind::Vertex);
                token_labels.push([args[0], args[1], args[2], args[3]]);
            }
            'L' => {
                if args.len() != 1 {
                    return Err(Error::Parse(format!("L needs 1 label in `{tok}`")));
                }
                if loop_label.is_some() {
                    return Err(Error::NonPlanar);
                }
                loop_label = Some(args[0]);
            }
            _ => return Err(Error::Parse(format!("unknown token `{tok}`"))),
        }
    }
    if let Some(label) = loop_label {
        if !nodes.is_empty() {
            return Err(Error::NonPlanar);
        }
        return PlaneDiagram::new(Vec::new(), vec![ArcData { label, ends: None }]);
    }

    // Group port slots by label.
    let mut slots: Vec<(u32, PortRef)> = Vec::new();
    for (ni, labels) in token_labels.iter().enumerate() {
        for (pi, &label) in labels.iter().enumerate() {
            slots.push((
                label,
                PortRef {
                    node: ni,
                    port: pi as u8,
                },
            ));
        }
    }
    slots.sort_by_key(|&(l, p)| (l, p));
    let mut arcs: Vec<ArcData> = Vec::new();
    let mut i = 0;
    while i < slots.len() {
        let label = slots[i].0;
        let run = slots[i..].iter().take_while(|&&(l, _)| l == label).count();
        if run != 2 {
            return Err(Error::Parse(format!(
                "label {label} appears {run} times; expected 2"
            )));
        }
        arcs.push(ArcData {
            label,
            ends: Some([slots[i].1, slots[i + 1].1]),
        });
        i += 2;
    }
    PlaneDiagram::new(nodes, arcs)
}

impl PlaneDiagram {
    /// Canonical PD serialization: nodes in id order, each token rotated to
    /// the admissible start port with the lexicographically least labels.
    pub fn to_pd_string(&self) -> String {
        if self.is_free_loop() {
            return format!("L({})", self.arcs()[0].label);
        }
        let mut toks = Vec::new();
        for (ni, kind) in self.nodes().iter().enumerate() {
            let labels: Vec<u32> = (0..4)
                .map(|p| {
                    let (arc, _) = self.arc_at(PortRef {
                        node: ni,
                        port: p as u8,
                    });
                    self.arc_label(arc)
                })
                .collect();
            let (name, starts): (char, Vec<u8>) = match kind {
                NodeKind::Crossing { over } => ('X', {
                    // start at an under-strand port
                    match over {
                        PortPair::P13 => vec![0, 2],
                        PortPair::P02 => vec![1, 3],
                    }
                }),
                NodeKind::Vertex => ('V', vec![0, 1, 2, 3]),
            };
            let rotation = |s: u8| -> [u32; 4] {
                [
                    labels[s as usize],
                    labels[(s as usize + 1) % 4],
                    labels[(s as usize + 2) % 4],
                    labels[(s as usize + 3) % 4],
                ]
            };
            let best = starts
                .into_iter()
                .map(rotation)
                .min()
                .expect("at least one start port");
            toks.push(format!(
                "{}({},{},{},{})",
                name, best[0], best[1], best[2], best[3]
            ));
        }
        toks.join(" ")
    }
}
