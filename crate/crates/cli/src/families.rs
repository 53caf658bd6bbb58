//! Family descriptor parsing for `verify --family` and `generate`.
//!
//! Grammar (arguments are `key=value` pairs):
//!
//! ```text
//! edge k=K                      single K-edge          (also the token edgeK)
//! hypertree k=K m=M             K-th power of the path with M edges
//! complete n=N k=K
//! squid k=K t=T
//! sunflower k=K s=S p=P
//! power kind=path|cycle|star|triangle n=N k=K
//! cartesian TOKEN TOKEN         TOKEN in { edgeK, loosepathK }
//! coalesce TOKEN TOKEN
//! ```

use hyperspec_core::eigenvariety::{
    cartesian_cardinality, coalescence_cardinality, family_cardinality, FamilyDescriptor,
};
use hyperspec_core::{corpus, Hypergraph, Int, SimpleGraph};
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphKind {
    Path,
    Cycle,
    Star,
    Triangle,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    Edge { k: usize },
    Hypertree { k: usize, m: usize },
    Complete { n: usize, k: usize },
    Squid { k: usize, t: usize },
    Sunflower { k: usize, s: usize, p: usize },
    Power { kind: GraphKind, n: usize, k: usize },
    Cartesian(Box<FamilySpec>, Box<FamilySpec>),
    Coalesce(Box<FamilySpec>, Box<FamilySpec>),
}

pub fn parse(args: &[String]) -> Result<FamilySpec, String> {
    let (name, rest) = args
        .split_first()
        .ok_or_else(|| "missing family name".to_string())?;
    match name.as_str() {
        "edge" => {
            let kv = key_values(rest)?;
            Ok(FamilySpec::Edge { k: need(&kv, "k")? })
        }
        "hypertree" => {
            let kv = key_values(rest)?;
            Ok(FamilySpec::Hypertree {
                k: need(&kv, "k")?,
                m: need(&kv, "m")?,
            })
        }
        "complete" => {
            let kv = key_values(rest)?;
            Ok(FamilySpec::Complete {
                n: need(&kv, "n")?,
                k: need(&kv, "k")?,
            })
        }
        "squid" => {
            let kv = key_values(rest)?;
            Ok(FamilySpec::Squid {
                k: need(&kv, "k")?,
                t: need(&kv, "t")?,
            })
        }
        "sunflower" => {
            let kv = key_values(rest)?;
            Ok(FamilySpec::Sunflower {
                k: need(&kv, "k")?,
                s: need(&kv, "s")?,
                p: need(&kv, "p")?,
            })
        }
        "power" => {
            let kv = key_values(rest)?;
            let kind = match kv.get("kind").map(String::as_str) {
                Some("path") => GraphKind::Path,
                Some("cycle") => GraphKind::Cycle,
                Some("star") => GraphKind::Star,
                Some("triangle") => GraphKind::Triangle,
                other => {
                    return Err(format!(
                        "power needs kind=path|cycle|star|triangle, got {other:?}"
                    ))
                }
            };
            let n = if kind == GraphKind::Triangle {
                3
            } else {
                need(&kv, "n")?
            };
            Ok(FamilySpec::Power {
                kind,
                n,
                k: need(&kv, "k")?,
            })
        }
        "cartesian" | "coalesce" => {
            if rest.len() != 2 {
                return Err(format!("{name} needs exactly two operand tokens"));
            }
            let a = Box::new(token(&rest[0])?);
            let b = Box::new(token(&rest[1])?);
            Ok(if name == "cartesian" {
                FamilySpec::Cartesian(a, b)
            } else {
                FamilySpec::Coalesce(a, b)
            })
        }
        other => Err(format!("unknown family: {other}")),
    }
}

fn token(text: &str) -> Result<FamilySpec, String> {
    if let Some(k) = text.strip_prefix("edge") {
        let k: usize = k
            .parse()
            .map_err(|_| format!("bad edge token {text}; expected e.g. edge3"))?;
        return Ok(FamilySpec::Edge { k });
    }
    if let Some(k) = text.strip_prefix("loosepath") {
        let k: usize = k
            .parse()
            .map_err(|_| format!("bad loosepath token {text}; expected e.g. loosepath3"))?;
        return Ok(FamilySpec::Hypertree { k, m: 2 });
    }
    Err(format!("unknown operand token {text}; use edgeK or loosepathK"))
}

fn key_values(args: &[String]) -> Result<HashMap<String, String>, String> {
    let mut kv = HashMap::new();
    for arg in args {
        let (key, value) = arg
            .split_once('=')
            .ok_or_else(|| format!("expected key=value, got {arg}"))?;
        kv.insert(key.to_string(), value.to_string());
    }
    Ok(kv)
}

fn need(kv: &HashMap<String, String>, key: &str) -> Result<usize, String> {
    kv.get(key)
        .ok_or_else(|| format!("missing {key}=..."))?
        .parse()
        .map_err(|_| format!("{key} must be a nonnegative integer"))
}

impl FamilySpec {
    pub fn describe(&self) -> String {
        match self {
            FamilySpec::Edge { k } => format!("edge k={k}"),
            FamilySpec::Hypertree { k, m } => format!("hypertree k={k} m={m}"),
            FamilySpec::Complete { n, k } => format!("complete n={n} k={k}"),
            FamilySpec::Squid { k, t } => format!("squid k={k} t={t}"),
            FamilySpec::Sunflower { k, s, p } => format!("sunflower k={k} s={s} p={p}"),
            FamilySpec::Power { kind, n, k } => {
                let kind = match kind {
                    GraphKind::Path => "path",
                    GraphKind::Cycle => "cycle",
                    GraphKind::Star => "star",
                    GraphKind::Triangle => "triangle",
                };
                format!("power kind={kind} n={n} k={k}")
            }
            FamilySpec::Cartesian(a, b) => {
                format!("cartesian ({}) ({})", a.describe(), b.describe())
            }
            FamilySpec::Coalesce(a, b) => {
                format!("coalesce ({}) ({})", a.describe(), b.describe())
            }
        }
    }

    pub fn build(&self) -> hyperspec_core::Result<Hypergraph> {
        match self {
            FamilySpec::Edge { k } => Ok(corpus::single_edge(*k)),
            FamilySpec::Hypertree { k, m } => corpus::hypertree(*k, *m),
            FamilySpec::Complete { n, k } => Hypergraph::complete(*n, *k),
            FamilySpec::Squid { k, t } => Hypergraph::squid(*k, *t),
            FamilySpec::Sunflower { k, s, p } => Hypergraph::sunflower(*k, *s, *p),
            FamilySpec::Power { kind, n, k } => {
                let graph = match kind {
                    GraphKind::Path => SimpleGraph::path(*n)?,
                    GraphKind::Cycle => SimpleGraph::cycle(*n)?,
                    GraphKind::Star => SimpleGraph::star(*n)?,
                    GraphKind::Triangle => SimpleGraph::triangle(),
                };
                Hypergraph::power_of_graph(&graph, *k)
            }
            FamilySpec::Cartesian(a, b) => a.build()?.cartesian(&b.build()?),
            FamilySpec::Coalesce(a, b) => {
                let left = a.build()?;
                let right = b.build()?;
                // chain at the last vertex of the left part, first of the right
                left.coalesce(left.n() - 1, &right, 0)
            }
        }
    }

    /// Closed-form cardinality (= multiplicity) prediction, when the
    /// family has one.
    pub fn oracle(&self) -> hyperspec_core::Result<Int> {
        match self {
            FamilySpec::Edge { k } => {
                family_cardinality(&FamilyDescriptor::Hypertree { k: *k, m: 1 })
            }
            FamilySpec::Hypertree { k, m } => {
                family_cardinality(&FamilyDescriptor::Hypertree { k: *k, m: *m })
            }
            FamilySpec::Complete { n, k } => {
                if n > k {
                    family_cardinality(&FamilyDescriptor::Complete { n: *n, k: *k })
                } else {
                    // complete with n = k degenerates to a single edge
                    family_cardinality(&FamilyDescriptor::Hypertree { k: *k, m: 1 })
                }
            }
            FamilySpec::Squid { k, t } => {
                family_cardinality(&FamilyDescriptor::Squid { k: *k, t: *t })
            }
            FamilySpec::Sunflower { k, s, p } => {
                let n = s + p * (k - s);
                family_cardinality(&FamilyDescriptor::Cored { k: *k, n, m: *p })
            }
            FamilySpec::Power { kind, n, k } => {
                let (graph_n, graph_m) = match kind {
                    GraphKind::Path => (*n, *n - 1),
                    GraphKind::Cycle => (*n, *n),
                    GraphKind::Star => (*n, *n - 1),
                    GraphKind::Triangle => (3, 3),
                };
                family_cardinality(&FamilyDescriptor::PowerGraph {
                    k: *k,
                    graph_n,
                    graph_m,
                })
            }
            FamilySpec::Cartesian(a, b) => cartesian_cardinality(&a.build()?, &b.build()?),
            FamilySpec::Coalesce(a, b) => coalescence_cardinality(&a.build()?, &b.build()?),
        }
    }
}
