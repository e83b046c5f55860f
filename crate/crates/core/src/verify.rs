//! Hypothesis and conclusion checks for the total color degree theorems.
//!
//! | theorem  | structure      | size          | degree       | conclusion |
//! |----------|----------------|---------------|--------------|------------|
//! | `tri`    | triangle-free  |               | `d̂(G) > 2mn` | `m + 1`    |
//! | `c4`     | C4-free        |               | `d̂(G) ≥ 2mn` | `m`        |
//! | `proper` | proper         | `n ≥ 8m`      | `d̂(G) ≥ 2mn` | `m`        |
//! | `general`|                | `n ≥ 3m²+4m`  | `d̂(G) ≥ 2mn` | `m`        |
//! | `q1`     |                |               | `d̂(G) ≥ 2mn` | `m`        |
//!
//! The last row is the open conjecture; the others are theorems, so a report
//! with all hypotheses met and the conclusion refuted is a violation.

use std::fmt;
use std::str::FromStr;

use crate::exact::{max_rainbow_matching, NodeBudget};
use crate::graph::{Edge, EdgeColoredGraph};
use crate::greedy::{peel_general, peel_proper, reconstruct, PeelTrace};
use crate::matching::Matching;
use crate::reduce::reduce_to_star_forests;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    TriangleFree,
    C4Free,
    ProperColored,
    General,
    ConjectureQ1,
}

impl TheoremId {
    pub const ALL: [TheoremId; 5] = [
        TheoremId::TriangleFree,
        TheoremId::C4Free,
        TheoremId::ProperColored,
        TheoremId::General,
        TheoremId::ConjectureQ1,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::TriangleFree => "tri",
            TheoremId::C4Free => "c4",
            TheoremId::ProperColored => "proper",
            TheoremId::General => "general",
            TheoremId::ConjectureQ1 => "q1",
        }
    }

    /// Size of the rainbow matching the conclusion asks for.
    pub fn required_size(self, m: usize) -> usize {
        match self {
            TheoremId::TriangleFree => m + 1,
            _ => m,
        }
    }

    pub fn method(self) -> Method {
        match self {
            TheoremId::ProperColored | TheoremId::General => Method::Greedy,
            _ => Method::Exact,
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "tri" | "triangle-free" => Ok(TheoremId::TriangleFree),
            "c4" | "c4-free" => Ok(TheoremId::C4Free),
            "proper" => Ok(TheoremId::ProperColored),
            "general" => Ok(TheoremId::General),
            "q1" | "conjecture" => Ok(TheoremId::ConjectureQ1),
            other => Err(format!("unknown theorem `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Exact,
    Greedy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conclusion {
    Met,
    NotMet,
    Unknown,
}

impl Conclusion {
    fn symbol(self) -> char {
        match self {
            Conclusion::Met => '1',
            Conclusion::NotMet => '0',
            Conclusion::Unknown => '?',
        }
    }
}

/// Per-hypothesis breakdown. `None` marks a hypothesis the theorem does not have.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypotheses {
    pub structure: Option<bool>,
    pub size: Option<bool>,
    pub degree: bool,
    pub n: usize,
    pub total_color_degree: usize,
    /// `2mn`
    pub threshold: usize,
}

impl Hypotheses {
    pub fn all_met(&self) -> bool {
        self.degree && self.structure != Some(false) && self.size != Some(false)
    }
}

pub fn check_hypotheses(g: &EdgeColoredGraph, m: usize, theorem: TheoremId) -> Hypotheses {
    let n = g.vertex_count();
    let total = g.total_color_degree();
    let threshold = 2 * m * n;
    let (structure, size, degree) = match theorem {
        TheoremId::TriangleFree => (Some(g.is_triangle_free()), None, total > threshold),
        TheoremId::C4Free => (Some(g.is_c4_free()), None, total >= threshold),
        TheoremId::ProperColored => (Some(g.is_properly_colored()), Some(n >= 8 * m), total >= threshold),
        TheoremId::General => (None, Some(n >= 3 * m * m + 4 * m), total >= threshold),
        TheoremId::ConjectureQ1 => (None, None, total >= threshold),
    };
    Hypotheses {
        structure,
        size,
        degree,
        n,
        total_color_degree: total,
        threshold,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub theorem: TheoremId,
    pub m: usize,
    pub hypotheses: Hypotheses,
    pub required_size: usize,
    pub conclusion: Conclusion,
    pub witness: Option<Matching>,
    pub method: Method,
    /// Peel trace, for the greedy theorems.
    pub trace: Option<PeelTrace>,
    /// Size of the greedily reconstructed matching.
    pub greedy_k: Option<usize>,
    /// Exact maximum, when it was computed to completion.
    pub exact_max: Option<usize>,
    /// Hypotheses met but the greedy fell short of `m` (whatever exact says).
    pub greedy_shortfall: bool,
}

impl VerifyReport {
    /// Hypotheses met and conclusion refuted.
    pub fn is_violation(&self) -> bool {
        self.hypotheses.all_met() && self.conclusion == Conclusion::NotMet
    }

    /// `theorem=<id> m=<m> hyp=<0|1> concl=<0|1|?> k=<k> max=<size>`
    pub fn verdict_line(&self) -> String {
        let k = self
            .greedy_k
            .or_else(|| self.witness.as_ref().map(Matching::len))
            .map_or("?".to_string(), |k| k.to_string());
        let max = self.exact_max.map_or("?".to_string(), |x| x.to_string());
        format!(
            "theorem={} m={} hyp={} concl={} k={} max={}",
            self.theorem,
            self.m,
            u8::from(self.hypotheses.all_met()),
            self.conclusion.symbol(),
            k,
            max
        )
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h = &self.hypotheses;
        let flag = |b: Option<bool>| match b {
            Some(true) => "yes",
            Some(false) => "NO",
            None => "n/a",
        };
        writeln!(f, "{}", self.verdict_line())?;
        let op = if self.theorem == TheoremId::TriangleFree {
            ">"
        } else {
            ">="
        };
        writeln!(
            f,
            "  degree: d(G) = {} {} 2mn = {}: {}",
            h.total_color_degree,
            op,
            h.threshold,
            flag(Some(h.degree))
        )?;
        writeln!(f, "  structure: {}", flag(h.structure))?;
        writeln!(f, "  size (n = {}): {}", h.n, flag(h.size))?;
        writeln!(
            f,
            "  conclusion: rainbow matching of size {}: {:?} ({:?})",
            self.required_size, self.conclusion, self.method
        )?;
        if let Some(w) = &self.witness {
            writeln!(f, "  witness: {w}")?;
        }
        if self.greedy_shortfall {
            writeln!(f, "  GREEDY SHORTFALL: peel returned k < m under the hypotheses")?;
        }
        if self.is_violation() {
            writeln!(f, "  VIOLATION: hypotheses hold but the conclusion fails")?;
        }
        Ok(())
    }
}

fn exact_conclusion(
    g: &EdgeColoredGraph,
    required: usize,
    budget: NodeBudget,
) -> (Conclusion, Option<Matching>, Option<usize>) {
    let r = max_rainbow_matching(g, budget);
    let exact_max = (!r.budget_exhausted).then_some(r.size);
    let conclusion = if r.size >= required {
        Conclusion::Met
    } else if r.budget_exhausted {
        Conclusion::Unknown
    } else {
        Conclusion::NotMet
    };
    let witness = (conclusion == Conclusion::Met).then_some(r.witness);
    (conclusion, witness, exact_max)
}

/// Checks the hypotheses and decides the conclusion: exactly for `tri`, `c4`
/// and `q1`; by peeling and reconstruction for `proper` and `general`, with
/// an exact fallback when the peel comes up short.
pub fn verify_theorem(g: &EdgeColoredGraph, m: usize, theorem: TheoremId, budget: NodeBudget) -> VerifyReport {
    let hypotheses = check_hypotheses(g, m, theorem);
    let required = theorem.required_size(m);
    let method = theorem.method();
    let mut report = VerifyReport {
        theorem,
        m,
        required_size: required,
        conclusion: Conclusion::Unknown,
        witness: None,
        method,
        trace: None,
        greedy_k: None,
        exact_max: None,
        greedy_shortfall: false,
        hypotheses,
    };
    if method == Method::Exact {
        let (conclusion, witness, exact_max) = exact_conclusion(g, required, budget);
        report.conclusion = conclusion;
        report.witness = witness;
        report.exact_max = exact_max;
        return report;
    }

    let (host, trace) = if theorem == TheoremId::ProperColored {
        (g.clone(), peel_proper(g, m))
    } else {
        let reduced = reduce_to_star_forests(g);
        let trace = peel_general(&reduced, m).expect("reduced graphs are star forests");
        (reduced, trace)
    };
    // Reconstruction only fails in proper mode on improper colorings.
    let greedy = reconstruct(&host, &trace).ok();
    let k = greedy.as_ref().map_or(0, Matching::len);
    report.greedy_k = Some(k);
    report.trace = Some(trace);
    report.greedy_shortfall = report.hypotheses.all_met() && k < m;
    if k >= required {
        report.conclusion = Conclusion::Met;
        report.witness = greedy;
    } else {
        let (conclusion, witness, exact_max) = exact_conclusion(g, required, budget);
        report.conclusion = conclusion;
        report.witness = witness;
        report.exact_max = exact_max;
    }
    report
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSumViolation {
    pub edge: Edge,
    pub sum: usize,
    pub bound: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSumReport {
    pub n: usize,
    pub triangle_free: bool,
    pub c4_free: bool,
    /// Largest `d̂(u) + d̂(v)` over edges `uv`, and the first edge attaining it.
    pub max_sum: usize,
    pub max_edge: Option<Edge>,
    pub violations: Vec<DegreeSumViolation>,
}

/// On triangle-free graphs every edge has `d̂(u) + d̂(v) <= n`; on C4-free
/// graphs `<= n + 1`. Any violation means a predicate or degree bug.
pub fn check_degree_sum_bounds(g: &EdgeColoredGraph) -> DegreeSumReport {
    let n = g.vertex_count();
    let degrees = g.color_degrees();
    let triangle_free = g.is_triangle_free();
    let c4_free = g.is_c4_free();
    let bound = match (triangle_free, c4_free) {
        (true, _) => Some(n),
        (false, true) => Some(n + 1),
        (false, false) => None,
    };
    let mut report = DegreeSumReport {
        n,
        triangle_free,
        c4_free,
        max_sum: 0,
        max_edge: None,
        violations: Vec::new(),
    };
    for e in g.edges() {
        let sum = degrees[e.u] + degrees[e.v];
        if report.max_edge.is_none() || sum > report.max_sum {
            report.max_sum = sum;
            report.max_edge = Some(*e);
        }
        if let Some(bound) = bound.filter(|&b| sum > b) {
            report.violations.push(DegreeSumViolation { edge: *e, sum, bound });
        }
    }
    report
}
