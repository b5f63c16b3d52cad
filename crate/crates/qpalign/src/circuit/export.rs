//! Circuit serialization: a line-oriented portable text dialect and a JSON
//! document, both lossless for every gate this crate emits.

use serde::{Deserialize, Serialize};

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::sim::gate::{Control, Gate, GateKind};
use crate::sim::layout::RegisterLayout;

pub const PORTABLE_HEADER: &str = "qpalign-qasm 1.0";
pub const JSON_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CircuitFormat {
    /// Line-oriented text: header, register declarations, one gate per line.
    PortableQasm,
    /// A JSON document with the same content.
    Json,
}

impl std::str::FromStr for CircuitFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<CircuitFormat> {
        match s {
            "portable-qasm" => Ok(CircuitFormat::PortableQasm),
            "json" => Ok(CircuitFormat::Json),
            other => Err(Error::Contract(format!(
                "unknown circuit format '{other}' (expected 'portable-qasm' or 'json')"
            ))),
        }
    }
}

impl CircuitFormat {
    pub fn name(self) -> &'static str {
        match self {
            CircuitFormat::PortableQasm => "portable-qasm",
            CircuitFormat::Json => "json",
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CircuitDoc {
    version: u32,
    qubits: usize,
    registers: Vec<RegisterDoc>,
    gates: Vec<GateDoc>,
}

#[derive(Serialize, Deserialize)]
struct RegisterDoc {
    name: String,
    width: usize,
}

#[derive(Serialize, Deserialize)]
struct GateDoc {
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    angle: Option<f64>,
    targets: Vec<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    controls: Vec<ControlDoc>,
}

#[derive(Serialize, Deserialize)]
struct ControlDoc {
    qubit: usize,
    positive: bool,
}

fn gate_to_doc(g: &Gate) -> GateDoc {
    let (kind, angle) = match g.kind {
        GateKind::H => ("h", None),
        GateKind::X => ("x", None),
        GateKind::Swap => ("swap", None),
        GateKind::CPhase { angle } => ("cphase", Some(angle)),
    };
    GateDoc {
        kind: kind.to_string(),
        angle,
        targets: g.targets.clone(),
        controls: g
            .controls
            .iter()
            .map(|c| ControlDoc {
                qubit: c.qubit,
                positive: c.positive,
            })
            .collect(),
    }
}

fn gate_from_doc(d: &GateDoc) -> Result<Gate> {
    let kind = match (d.kind.as_str(), d.angle) {
        ("h", None) => GateKind::H,
        ("x", None) => GateKind::X,
        ("swap", None) => GateKind::Swap,
        ("cphase", Some(angle)) => GateKind::CPhase { angle },
        ("cphase", None) => {
            return Err(Error::CircuitParse("cphase gate without an angle".into()))
        }
        (other, _) => {
            return Err(Error::CircuitParse(format!("unknown gate kind '{other}'")));
        }
    };
    Ok(Gate {
        kind,
        targets: d.targets.clone(),
        controls: d
            .controls
            .iter()
            .map(|c| Control {
                qubit: c.qubit,
                positive: c.positive,
            })
            .collect(),
    })
}

fn render_portable(layout: &RegisterLayout, circuit: &Circuit) -> String {
    let mut out = String::new();
    out.push_str(PORTABLE_HEADER);
    out.push('\n');
    out.push_str(&format!("qubits {}\n", circuit.num_qubits()));
    for (name, reg) in layout.registers() {
        out.push_str(&format!("reg {name} {}\n", reg.width));
    }
    for g in circuit.gates() {
        let doc = gate_to_doc(g);
        out.push_str(&doc.kind);
        if let Some(angle) = doc.angle {
            out.push_str(&format!(" {angle}"));
        }
        for t in &doc.targets {
            out.push_str(&format!(" {t}"));
        }
        if !doc.controls.is_empty() {
            out.push_str(" ctrl");
            for c in &doc.controls {
                out.push_str(&format!(
                    " {}{}",
                    if c.positive { '+' } else { '-' },
                    c.qubit
                ));
            }
        }
        out.push('\n');
    }
    out
}

fn parse_portable(text: &str) -> Result<(RegisterLayout, Circuit)> {
    let bad = |line: usize, msg: String| Error::CircuitParse(format!("line {line}: {msg}"));
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    match lines.next() {
        Some((_, l)) if l == PORTABLE_HEADER => {}
        _ => {
            return Err(Error::CircuitParse(format!(
                "missing '{PORTABLE_HEADER}' header"
            )))
        }
    }
    let mut qubits: Option<usize> = None;
    let mut layout = RegisterLayout::new();
    let mut circuit: Option<Circuit> = None;
    for (no, line) in lines {
        let mut tok = line.split_whitespace();
        let head = tok.next().expect("nonempty line");
        let rest: Vec<&str> = tok.collect();
        match head {
            "qubits" => {
                if qubits.is_some() {
                    return Err(bad(no, "duplicate qubits line".into()));
                }
                let n: usize = rest
                    .first()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| bad(no, "qubits needs one integer".into()))?;
                qubits = Some(n);
            }
            "reg" => {
                if circuit.is_some() {
                    return Err(bad(no, "register declared after gates".into()));
                }
                let (name, width) = match rest.as_slice() {
                    [name, width] => (*name, *width),
                    _ => return Err(bad(no, "reg needs a name and a width".into())),
                };
                let width: usize = width
                    .parse()
                    .map_err(|_| bad(no, format!("bad register width '{width}'")))?;
                layout.push(name, width)?;
            }
            "h" | "x" | "swap" | "cphase" => {
                let n = qubits
                    .ok_or_else(|| bad(no, "gate before the qubits line".into()))?;
                let c = circuit.get_or_insert_with(|| Circuit::new(n));
                let mut angle = None;
                let mut args = rest.as_slice();
                if head == "cphase" {
                    let raw = args
                        .first()
                        .ok_or_else(|| bad(no, "cphase needs an angle".into()))?;
                    angle = Some(
                        raw.parse::<f64>()
                            .map_err(|_| bad(no, format!("bad angle '{raw}'")))?,
                    );
                    args = &args[1..];
                }
                let split = args.iter().position(|&a| a == "ctrl").unwrap_or(args.len());
                let (target_toks, ctrl_toks) = args.split_at(split);
                let targets: Vec<usize> = target_toks
                    .iter()
                    .map(|s| {
                        s.parse()
                            .map_err(|_| bad(no, format!("bad target qubit '{s}'")))
                    })
                    .collect::<Result<_>>()?;
                let mut controls = Vec::new();
                for s in ctrl_toks.iter().skip(1) {
                    let (sign, num) = s.split_at(1);
                    let qubit: usize = num
                        .parse()
                        .map_err(|_| bad(no, format!("bad control '{s}'")))?;
                    let positive = match sign {
                        "+" => true,
                        "-" => false,
                        _ => return Err(bad(no, format!("control '{s}' must start with + or -"))),
                    };
                    controls.push(Control { qubit, positive });
                }
                let doc = GateDoc {
                    kind: head.to_string(),
                    angle,
                    targets,
                    controls: controls
                        .iter()
                        .map(|c| ControlDoc {
                            qubit: c.qubit,
                            positive: c.positive,
                        })
                        .collect(),
                };
                c.push(gate_from_doc(&doc)?)
                    .map_err(|e| bad(no, e.to_string()))?;
            }
            other => return Err(bad(no, format!("unknown directive '{other}'"))),
        }
    }
    let n = qubits.ok_or_else(|| Error::CircuitParse("missing qubits line".into()))?;
    if layout.total_qubits() != n {
        return Err(Error::CircuitParse(format!(
            "registers cover {} qubits but header declares {n}",
            layout.total_qubits()
        )));
    }
    Ok((layout, circuit.unwrap_or_else(|| Circuit::new(n))))
}

/// Renders `circuit` (with its register layout) in the requested format.
pub fn export_circuit(
    layout: &RegisterLayout,
    circuit: &Circuit,
    format: CircuitFormat,
) -> Result<String> {
    match format {
        CircuitFormat::PortableQasm => Ok(render_portable(layout, circuit)),
        CircuitFormat::Json => {
            let doc = CircuitDoc {
                version: JSON_VERSION,
                qubits: circuit.num_qubits(),
                registers: layout
                    .registers()
                    .map(|(name, reg)| RegisterDoc {
                        name: name.to_string(),
                        width: reg.width,
                    })
                    .collect(),
                gates: circuit.gates().iter().map(gate_to_doc).collect(),
            };
            Ok(serde_json::to_string_pretty(&doc)?)
        }
    }
}

/// Parses a circuit previously rendered by [`export_circuit`]. Every gate is
/// re-validated against the declared qubit count.
pub fn import_circuit(text: &str, format: CircuitFormat) -> Result<(RegisterLayout, Circuit)> {
    match format {
        CircuitFormat::PortableQasm => parse_portable(text),
        CircuitFormat::Json => {
            let doc: CircuitDoc = serde_json::from_str(text)?;
            if doc.version != JSON_VERSION {
                return Err(Error::CircuitParse(format!(
                    "unsupported circuit document version {}",
                    doc.version
                )));
            }
            let mut layout = RegisterLayout::new();
            for r in &doc.registers {
                layout.push(&r.name, r.width)?;
            }
            if layout.total_qubits() != doc.qubits {
                return Err(Error::CircuitParse(format!(
                    "registers cover {} qubits but document declares {}",
                    layout.total_qubits(),
                    doc.qubits
                )));
            }
            let mut circuit = Circuit::new(doc.qubits);
            for g in &doc.gates {
                circuit.push(gate_from_doc(g)?)?;
            }
            Ok((layout, circuit))
        }
    }
}
