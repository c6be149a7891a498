//! Unit-free multiplicative proof nets, composed through linkings.
//!
//! A net from `X` to `Y` is a correct axiom matching on the leaves of
//! `dual(X) ⅋ Y`. The matching, read as a linking from the leaves of `X` to
//! the leaves of `Y`, composes by pullback; correctness guarantees the
//! pullback never forms a loop and every path stays binary, so cut
//! elimination is literally linking composition here.
//!
//! Correctness is the switching criterion: for every choice of one premise
//! per `⅋` node, the graph made of the remaining formula-tree edges and the
//! axiom edges must be a tree. The check enumerates switchings and is
//! capped; a contractibility-style linear check would lift the cap but is
//! not needed at this scale.

use std::fmt;

use thiserror::Error;

use crate::compose::ComposeError;
use crate::irel::VertexSet;
use crate::linking::{Link, Linking};

/// Switching enumeration cap.
pub const MAX_PARS: usize = 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MllError {
    #[error("{0}")]
    Parse(#[from] FormulaParseError),
    #[error("invalid axiom matching: {reason}")]
    InvalidAxioms { reason: String },
    #[error("{pars} par nodes exceed the switching cap of {max}; use a smaller formula")]
    TooManyPars { pars: usize, max: usize },
    #[error("the matching is not a correct proof net")]
    NotCorrect,
    #[error("cannot compose: first net ends in {expected}, second starts from {found}")]
    FormulaMismatch { expected: String, found: String },
    #[error("composition of correct nets broke an invariant ({detail}); this is a bug")]
    CompositionInvariant { detail: String },
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("syntax error at offset {position}: {message}")]
pub struct FormulaParseError {
    pub position: usize,
    pub message: String,
}

/// A unit-free multiplicative formula in negation normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom { name: String, positive: bool },
    Tensor(Box<Formula>, Box<Formula>),
    Par(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: &str) -> Formula {
        Formula::Atom {
            name: name.to_string(),
            positive: true,
        }
    }

    pub fn negated_atom(name: &str) -> Formula {
        Formula::Atom {
            name: name.to_string(),
            positive: false,
        }
    }

    pub fn tensor(a: Formula, b: Formula) -> Formula {
        Formula::Tensor(Box::new(a), Box::new(b))
    }

    pub fn par(a: Formula, b: Formula) -> Formula {
        Formula::Par(Box::new(a), Box::new(b))
    }

    /// Grammar: `atom := ident | ident "^"` and
    /// `expr := atom | "(" expr ("*" | "@") expr ")"`, `*` for tensor, `@`
    /// for par; whitespace is ignored.
    pub fn parse(text: &str) -> Result<Formula, FormulaParseError> {
        let mut parser = Parser {
            bytes: text.as_bytes(),
            pos: 0,
        };
        parser.skip_ws();
        let formula = parser.expr()?;
        parser.skip_ws();
        if parser.pos < parser.bytes.len() {
            return Err(parser.error("unexpected trailing input"));
        }
        Ok(formula)
    }

    /// De Morgan dual: flips atom polarities and swaps tensor with par,
    /// preserving subformula order. An involution.
    pub fn dual(&self) -> Formula {
        match self {
            Formula::Atom { name, positive } => Formula::Atom {
                name: name.clone(),
                positive: !positive,
            },
            Formula::Tensor(a, b) => Formula::par(a.dual(), b.dual()),
            Formula::Par(a, b) => Formula::tensor(a.dual(), b.dual()),
        }
    }

    /// Leaves in left-to-right order as (name, polarity).
    pub fn leaves(&self) -> Vec<(&str, bool)> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<(&'a str, bool)>) {
        match self {
            Formula::Atom { name, positive } => out.push((name, *positive)),
            Formula::Tensor(a, b) | Formula::Par(a, b) => {
                a.collect_leaves(out);
                b.collect_leaves(out);
            }
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Formula::Atom { .. } => 1,
            Formula::Tensor(a, b) | Formula::Par(a, b) => a.leaf_count() + b.leaf_count(),
        }
    }

    /// `source ⊸ target`, encoded as `dual(source) ⅋ target`; nets live on
    /// this formula, with the dualised source leaves first.
    pub fn lollipop(source: &Formula, target: &Formula) -> Formula {
        Formula::par(source.dual(), target.clone())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom { name, positive } => {
                write!(f, "{}{}", name, if *positive { "" } else { "^" })
            }
            Formula::Tensor(a, b) => write!(f, "({} * {})", a, b),
            Formula::Par(a, b) => write!(f, "({} @ {})", a, b),
        }
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, message: &str) -> FormulaParseError {
        FormulaParseError {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Formula, FormulaParseError> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let left = self.expr()?;
                self.skip_ws();
                let combine = match self.peek() {
                    Some(b'*') => Formula::tensor,
                    Some(b'@') => Formula::par,
                    _ => return Err(self.error("expected '*' or '@'")),
                };
                self.pos += 1;
                let right = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                if self.peek() == Some(b'^') {
                    return Err(self.error("negation is only allowed on atoms"));
                }
                Ok(combine(left, right))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self
                    .peek()
                    .is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.bytes[start..self.pos])
                    .expect("ascii identifier")
                    .to_string();
                let positive = if self.peek() == Some(b'^') {
                    self.pos += 1;
                    false
                } else {
                    true
                };
                Ok(Formula::Atom { name, positive })
            }
            _ => Err(self.error("expected a formula")),
        }
    }
}

/// Formula-tree shape flattened for the switching check. Nodes are carried
/// as indices; tensors and pars keep their two children.
struct Structure {
    node_count: usize,
    tensors: Vec<(usize, usize, usize)>,
    pars: Vec<(usize, usize, usize)>,
    leaf_nodes: Vec<usize>,
}

fn build_structure(formula: &Formula) -> Structure {
    fn go(f: &Formula, s: &mut Structure) -> usize {
        let id = s.node_count;
        s.node_count += 1;
        match f {
            Formula::Atom { .. } => s.leaf_nodes.push(id),
            Formula::Tensor(a, b) => {
                let left = go(a, s);
                let right = go(b, s);
                s.tensors.push((id, left, right));
            }
            Formula::Par(a, b) => {
                let left = go(a, s);
                let right = go(b, s);
                s.pars.push((id, left, right));
            }
        }
        id
    }
    let mut s = Structure {
        node_count: 0,
        tensors: Vec::new(),
        pars: Vec::new(),
        leaf_nodes: Vec::new(),
    };
    go(formula, &mut s);
    s
}

fn validate_axioms(formula: &Formula, axioms: &[(usize, usize)]) -> Result<(), MllError> {
    let leaves = formula.leaves();
    let n = leaves.len();
    let mut matched = vec![false; n];
    for &(i, j) in axioms {
        for leaf in [i, j] {
            if leaf >= n {
                return Err(MllError::InvalidAxioms {
                    reason: format!("leaf index {leaf} out of range for {n} leaves"),
                });
            }
            if matched[leaf] {
                return Err(MllError::InvalidAxioms {
                    reason: format!("leaf {leaf} is matched twice"),
                });
            }
            matched[leaf] = true;
        }
        let (name_i, pol_i) = leaves[i];
        let (name_j, pol_j) = leaves[j];
        if name_i != name_j || pol_i == pol_j {
            return Err(MllError::InvalidAxioms {
                reason: format!(
                    "leaves {i} and {j} are not complementary literals ({}{} vs {}{})",
                    name_i,
                    if pol_i { "" } else { "^" },
                    name_j,
                    if pol_j { "" } else { "^" },
                ),
            });
        }
    }
    if let Some(leaf) = matched.iter().position(|&m| !m) {
        return Err(MllError::InvalidAxioms {
            reason: format!("leaf {leaf} is not matched"),
        });
    }
    Ok(())
}

/// The switching criterion: with the axioms in place, every choice of one
/// premise per par node must leave a connected, acyclic graph.
///
/// The axioms must form a perfect matching of complementary leaves;
/// anything else is reported as an error rather than as incorrectness.
pub fn dr_correct(formula: &Formula, axioms: &[(usize, usize)]) -> Result<bool, MllError> {
    validate_axioms(formula, axioms)?;
    let s = build_structure(formula);
    if s.pars.len() > MAX_PARS {
        return Err(MllError::TooManyPars {
            pars: s.pars.len(),
            max: MAX_PARS,
        });
    }

    let node_count = s.node_count;
    let mut fixed_edges: Vec<(usize, usize)> = Vec::new();
    for &(node, left, right) in &s.tensors {
        fixed_edges.push((node, left));
        fixed_edges.push((node, right));
    }
    for &(i, j) in axioms {
        fixed_edges.push((s.leaf_nodes[i], s.leaf_nodes[j]));
    }

    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }

    for mask in 0u64..(1u64 << s.pars.len()) {
        let mut parent = (0..node_count).collect::<Vec<usize>>();
        let mut components = node_count;
        let switched = s.pars.iter().enumerate().map(|(k, &(node, left, right))| {
            if mask & (1 << k) == 0 {
                (node, left)
            } else {
                (node, right)
            }
        });
        for (a, b) in fixed_edges.iter().copied().chain(switched) {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                // A cycle: this switching is not a tree.
                return Ok(false);
            }
            parent[ra] = rb;
            components -= 1;
        }
        if components != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A proof net `source -> target`: a correct axiom matching on the leaves
/// of `dual(source) ⅋ target`, stored as a linking from source leaves to
/// target leaves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofNet {
    source: Formula,
    target: Formula,
    axioms: Linking,
}

impl ProofNet {
    /// Builds and checks a net. Axiom pairs index the leaves of
    /// `dual(source) ⅋ target` left to right, dualised source leaves first.
    pub fn new(
        source: Formula,
        target: Formula,
        axioms: &[(usize, usize)],
    ) -> Result<ProofNet, MllError> {
        let structure = Formula::lollipop(&source, &target);
        if !dr_correct(&structure, axioms)? {
            return Err(MllError::NotCorrect);
        }
        let n_source = source.leaf_count();
        let n_target = target.leaf_count();
        let links = axioms
            .iter()
            .map(|&(i, j)| {
                let feet = [i, j];
                Link::new(
                    feet.iter().filter(|&&v| v < n_source).copied(),
                    feet.iter()
                        .filter(|&&v| v >= n_source)
                        .map(|&v| v - n_source),
                )
                .expect("axiom links have two feet")
            })
            .collect();
        let axioms = Linking::new(VertexSet::new(n_source), VertexSet::new(n_target), links, 0)
            .expect("a perfect matching has disjoint feet");
        Ok(ProofNet {
            source,
            target,
            axioms,
        })
    }

    /// The identity net on a formula: each dualised leaf matched with its
    /// own occurrence.
    pub fn identity(formula: &Formula) -> ProofNet {
        let n = formula.leaf_count();
        let axioms: Vec<(usize, usize)> = (0..n).map(|i| (i, n + i)).collect();
        ProofNet::new(formula.clone(), formula.clone(), &axioms)
            .expect("the identity matching is correct")
    }

    pub fn source(&self) -> &Formula {
        &self.source
    }

    pub fn target(&self) -> &Formula {
        &self.target
    }

    /// The forgetful image: just the leaves and the links between them.
    /// Always total and binary, with no loops on a cut-free net.
    pub fn forget(&self) -> Linking {
        self.axioms.clone()
    }

    /// Axiom pairs over the combined leaf index space, sorted.
    pub fn axiom_pairs(&self) -> Vec<(usize, usize)> {
        let n_source = self.source.leaf_count();
        self.axioms
            .links()
            .iter()
            .map(|link| {
                let mut feet: Vec<usize> = link
                    .left()
                    .iter()
                    .copied()
                    .chain(link.right().iter().map(|&j| n_source + j))
                    .collect();
                feet.sort_unstable();
                (feet[0], feet[1])
            })
            .collect()
    }

    /// Cut elimination against `later`, computed as linking composition.
    /// Correctness of both nets guarantees the pullback forms no loops and
    /// keeps every path binary; a violation is an internal error.
    pub fn then(&self, later: &ProofNet) -> Result<ProofNet, MllError> {
        if self.target != later.source {
            return Err(MllError::FormulaMismatch {
                expected: self.target.to_string(),
                found: later.source.to_string(),
            });
        }
        let pb = self.axioms.then(&later.axioms).map_err(|e: ComposeError| {
            MllError::CompositionInvariant {
                detail: e.to_string(),
            }
        })?;
        if pb.new_loops != 0 {
            return Err(MllError::CompositionInvariant {
                detail: format!("{} loops formed", pb.new_loops),
            });
        }
        let n_source = self.source.leaf_count();
        let mut pairs = Vec::new();
        for link in pb.linking.links() {
            if !link.is_binary() {
                return Err(MllError::CompositionInvariant {
                    detail: format!("a composite path has {} feet", link.arity()),
                });
            }
            let mut feet: Vec<usize> = link
                .left()
                .iter()
                .copied()
                .chain(link.right().iter().map(|&j| n_source + j))
                .collect();
            feet.sort_unstable();
            pairs.push((feet[0], feet[1]));
        }
        ProofNet::new(self.source.clone(), later.target.clone(), &pairs).map_err(|e| {
            MllError::CompositionInvariant {
                detail: format!("composite failed the net checks: {e}"),
            }
        })
    }
}
