//! Equation instances and their line-oriented text format.
//!
//! ```text
//! # comment
//! semigroup 2        # or: cyclic <n>
//! 0 1
//! 1 0
//! sigma identity     # or: sigma negation | sigma <n indices>
//! tau 0 1
//! carrier gf 3       # or: carrier zmod <n>
//! equation dalembert # or: jensen | quadratic
//! ```

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::carrier::{make_carrier, Carrier, CarrierKind, CarrierSpec};
use super::involution::{square_pair_involution, Involution, PairInvolution};
use super::semigroup::FiniteSemigroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EquationKind {
    /// `f(x+y,z+w) + f(x+σy,z+τw) = 2 f(x,z) f(y,w)`
    DAlembert,
    /// `f(x+y,z+w) + f(x+σy,z+τw) = 2 f(x,z)`
    Jensen,
    /// `f(x+y,z+w) + f(x+σy,z+τw) = 2 f(x,z) + 2 f(y,w)`
    Quadratic,
}

impl fmt::Display for EquationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EquationKind::DAlembert => "dalembert",
            EquationKind::Jensen => "jensen",
            EquationKind::Quadratic => "quadratic",
        })
    }
}

impl FromStr for EquationKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dalembert" => Ok(EquationKind::DAlembert),
            "jensen" => Ok(EquationKind::Jensen),
            "quadratic" => Ok(EquationKind::Quadratic),
            other => Err(format!(
                "unknown equation `{other}` (expected dalembert, jensen or quadratic)"
            )),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InstanceError {
    #[error("{which} acts on {found} elements but the semigroup has {expected}")]
    SizeMismatch {
        which: &'static str,
        found: usize,
        expected: usize,
    },
    #[error("the d'Alembert-type equation needs a field carrier, got {0}")]
    NeedsField(String),
}

/// One functional equation over `S²` with involutions `σ, τ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquationInstance {
    semigroup: FiniteSemigroup,
    sigma: Involution,
    tau: Involution,
    carrier: Carrier,
    kind: EquationKind,
    square: FiniteSemigroup,
    pair: PairInvolution,
}

impl EquationInstance {
    pub fn new(
        semigroup: FiniteSemigroup,
        sigma: Involution,
        tau: Involution,
        carrier: Carrier,
        kind: EquationKind,
    ) -> Result<Self, InstanceError> {
        let n = semigroup.size();
        for (which, inv) in [("sigma", &sigma), ("tau", &tau)] {
            if inv.size() != n {
                return Err(InstanceError::SizeMismatch {
                    which,
                    found: inv.size(),
                    expected: n,
                });
            }
        }
        if kind == EquationKind::DAlembert && !carrier.is_field() {
            return Err(InstanceError::NeedsField(carrier.to_string()));
        }
        let square = semigroup.product(&semigroup);
        let pair = square_pair_involution(&sigma, &tau);
        Ok(EquationInstance {
            semigroup,
            sigma,
            tau,
            carrier,
            kind,
            square,
            pair,
        })
    }

    pub fn semigroup(&self) -> &FiniteSemigroup {
        &self.semigroup
    }

    pub fn sigma(&self) -> &Involution {
        &self.sigma
    }

    pub fn tau(&self) -> &Involution {
        &self.tau
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn kind(&self) -> EquationKind {
        self.kind
    }

    /// `S×S` with componentwise addition on pair indices.
    pub fn square(&self) -> &FiniteSemigroup {
        &self.square
    }

    /// `(x, z) ↦ (σx, τz)` on pair indices.
    pub fn pair_involution(&self) -> &PairInvolution {
        &self.pair
    }

    pub fn side(&self) -> usize {
        self.semigroup.size()
    }

    /// Number of cells of a function on `S²`.
    pub fn cells(&self) -> usize {
        self.square.size()
    }

    pub fn with_kind(&self, kind: EquationKind) -> Result<Self, InstanceError> {
        EquationInstance::new(
            self.semigroup.clone(),
            self.sigma.clone(),
            self.tau.clone(),
            self.carrier.clone(),
            kind,
        )
    }

    /// Serializes to the instance text format; [`parse_instance`] reads it back.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let n = self.side();
        if self.semigroup == FiniteSemigroup::cyclic(n) {
            out.push_str(&format!("cyclic {n}\n"));
        } else {
            out.push_str(&format!("semigroup {n}\n"));
            for row in self.semigroup.rows() {
                out.push_str(&join(row));
                out.push('\n');
            }
        }
        for (name, inv) in [("sigma", &self.sigma), ("tau", &self.tau)] {
            if inv.is_identity() {
                out.push_str(&format!("{name} identity\n"));
            } else {
                out.push_str(&format!("{name} {}\n", join(inv.as_slice())));
            }
        }
        let carrier = match self.carrier.kind() {
            CarrierKind::GaloisField { .. } => format!("gf {}", self.carrier.order()),
            _ => format!("zmod {}", self.carrier.order()),
        };
        out.push_str(&format!("carrier {carrier}\n"));
        out.push_str(&format!("equation {}\n", self.kind));
        out
    }
}

impl fmt::Display for EquationInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} |S|={} sigma=[{}] tau=[{}] over {}",
            self.kind,
            self.side(),
            join(self.sigma.as_slice()),
            join(self.tau.as_slice()),
            self.carrier
        )
    }
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

enum InvolutionSpec {
    Identity,
    Negation,
    Explicit(Vec<usize>),
}

fn parse_usize(token: &str, line: usize) -> Result<usize, ParseError> {
    token
        .parse()
        .or_else(|_| err(line, format!("expected a non-negative integer, found `{token}`")))
}

/// Parses the instance text format. Errors carry 1-based line numbers.
pub fn parse_instance(text: &str) -> Result<EquationInstance, ParseError> {
    let lines: Vec<(usize, Vec<&str>)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| {
            let content = l.split('#').next().unwrap_or("");
            (i + 1, content.split_whitespace().collect::<Vec<_>>())
        })
        .filter(|(_, tokens)| !tokens.is_empty())
        .collect();
    let end = text.lines().count().max(1);

    let mut semigroup: Option<(usize, FiniteSemigroup)> = None;
    let mut sigma: Option<(usize, InvolutionSpec)> = None;
    let mut tau: Option<(usize, InvolutionSpec)> = None;
    let mut carrier: Option<(usize, Carrier)> = None;
    let mut kind: Option<(usize, EquationKind)> = None;

    let mut iter = lines.iter();
    while let Some((line, tokens)) = iter.next() {
        let line = *line;
        let args = &tokens[1..];
        match tokens[0] {
            "semigroup" | "cyclic" if semigroup.is_some() => {
                return err(line, "semigroup defined twice");
            }
            "semigroup" => {
                let [n] = args else {
                    return err(line, "expected `semigroup <n>`");
                };
                let n = parse_usize(n, line)?;
                if n == 0 {
                    return err(line, "semigroup must have at least one element");
                }
                let mut rows = Vec::with_capacity(n);
                for r in 0..n {
                    let Some((row_line, row)) = iter.next() else {
                        return err(end, format!("expected {n} table rows, found {r}"));
                    };
                    let row = row
                        .iter()
                        .map(|t| parse_usize(t, *row_line))
                        .collect::<Result<Vec<_>, _>>()?;
                    if row.len() != n {
                        return err(
                            *row_line,
                            format!("table row has {} entries, expected {n}", row.len()),
                        );
                    }
                    rows.push(row);
                }
                let s = FiniteSemigroup::from_rows(n, &rows)
                    .or_else(|e| err(line, e.to_string()))?;
                semigroup = Some((line, s));
            }
            "cyclic" => {
                let [n] = args else {
                    return err(line, "expected `cyclic <n>`");
                };
                let n = parse_usize(n, line)?;
                if n == 0 {
                    return err(line, "cyclic group must have at least one element");
                }
                semigroup = Some((line, FiniteSemigroup::cyclic(n)));
            }
            name @ ("sigma" | "tau") => {
                let slot = if name == "sigma" { &mut sigma } else { &mut tau };
                if slot.is_some() {
                    return err(line, format!("{name} defined twice"));
                }
                let spec = match args {
                    [] => return err(line, format!("expected `{name} identity|negation|<indices>`")),
                    ["identity"] => InvolutionSpec::Identity,
                    ["negation"] => InvolutionSpec::Negation,
                    xs => InvolutionSpec::Explicit(
                        xs.iter()
                            .map(|t| parse_usize(t, line))
                            .collect::<Result<_, _>>()?,
                    ),
                };
                *slot = Some((line, spec));
            }
            "carrier" => {
                if carrier.is_some() {
                    return err(line, "carrier defined twice");
                }
                let spec = match args {
                    ["gf", q] => CarrierSpec::GaloisField(parse_u32(q, line)?),
                    ["zmod", n] => CarrierSpec::ZMod(parse_u32(n, line)?),
                    _ => return err(line, "expected `carrier gf <q>` or `carrier zmod <n>`"),
                };
                let c = make_carrier(&spec).or_else(|e| err(line, e.to_string()))?;
                carrier = Some((line, c));
            }
            "equation" => {
                if kind.is_some() {
                    return err(line, "equation defined twice");
                }
                let [k] = args else {
                    return err(line, "expected `equation dalembert|jensen|quadratic`");
                };
                kind = Some((line, k.parse().or_else(|m: String| err(line, m))?));
            }
            other => return err(line, format!("unknown directive `{other}`")),
        }
    }

    let Some((_, s)) = semigroup else {
        return err(end, "missing `semigroup` or `cyclic` directive");
    };
    let resolve = |name: &str, slot: Option<(usize, InvolutionSpec)>| {
        let Some((line, spec)) = slot else {
            return err(end, format!("missing `{name}` directive"));
        };
        match spec {
            InvolutionSpec::Identity => Ok(Involution::identity(&s)),
            InvolutionSpec::Negation => Involution::negation(&s),
            InvolutionSpec::Explicit(map) => Involution::new(&s, map),
        }
        .or_else(|e| err(line, format!("{name}: {e}")))
    };
    let sigma = resolve("sigma", sigma)?;
    let tau = resolve("tau", tau)?;
    let Some((_, carrier)) = carrier else {
        return err(end, "missing `carrier` directive");
    };
    let Some((kind_line, kind)) = kind else {
        return err(end, "missing `equation` directive");
    };
    EquationInstance::new(s, sigma, tau, carrier, kind).or_else(|e| err(kind_line, e.to_string()))
}

fn parse_u32(token: &str, line: usize) -> Result<u32, ParseError> {
    token
        .parse()
        .or_else(|_| err(line, format!("expected a positive integer, found `{token}`")))
}

impl FromStr for EquationInstance {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_instance(s)
    }
}
