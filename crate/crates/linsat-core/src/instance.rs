//! The max-LINSAT instance model: `m` constraints over `n` variables, each
//! requiring the linear form `sum_j B[i][j] * x[j]` to land in an acceptance
//! set `F_i` that is a nonempty proper subset of `F_q`.
//!
//! Satisfaction counts and ratios are exact (integers and rationals); no
//! floating point enters the bookkeeping.
//!
//! # Text format
//!
//! UTF-8, line-based. Lines starting with `#` are comments; blank lines are
//! ignored.
//!
//! ```text
//! linsat <q> <n> <m>
//! <c_1> <c_2> ... <c_n> | <f_1> <f_2> ... <f_k>     (m such lines)
//! ```
//!
//! Coefficients and acceptance values are decimal element encodings in
//! `[0, q)`; the acceptance list is strictly increasing with
//! `1 <= k <= q - 1`. Assignments serialize as one line of `n` encodings.

use crate::gf::{FieldElement, FieldError, FieldSpec};
use crate::Rat;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InstanceError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("constraint {index}: {msg}")]
    InvariantViolation { index: usize, msg: String },
    #[error("{0}")]
    Shape(String),
    #[error("assignment has {got} values but the instance has {expected} variables")]
    DimensionMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// One constraint: a coefficient row and its acceptance set.
///
/// The acceptance set is kept as a strictly increasing sequence of element
/// encodings; [`Constraint::new`] sorts its input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    coeffs: Vec<FieldElement>,
    accept: Vec<FieldElement>,
}

impl Constraint {
    pub fn new(coeffs: Vec<FieldElement>, mut accept: Vec<FieldElement>) -> Constraint {
        accept.sort_unstable();
        Constraint { coeffs, accept }
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn accept(&self) -> &[FieldElement] {
        &self.accept
    }

    pub fn accepts(&self, value: FieldElement) -> bool {
        self.accept.binary_search(&value).is_ok()
    }
}

/// An immutable max-LINSAT instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    spec: FieldSpec,
    n: usize,
    rows: Vec<Constraint>,
    /// Acceptance sets mirrored as bitmasks when q <= 64.
    masks: Option<Vec<u64>>,
}

impl Instance {
    pub fn new(spec: FieldSpec, n: usize, rows: Vec<Constraint>) -> Result<Instance, InstanceError> {
        if n == 0 {
            return Err(InstanceError::Shape("instance needs n >= 1 variables".into()));
        }
        if rows.is_empty() {
            return Err(InstanceError::Shape("instance needs m >= 1 constraints".into()));
        }
        let q = spec.q();
        for (index, row) in rows.iter().enumerate() {
            if row.coeffs.len() != n {
                return Err(InstanceError::InvariantViolation {
                    index,
                    msg: format!("row has {} coefficients, expected {}", row.coeffs.len(), n),
                });
            }
            if let Some(c) = row.coeffs.iter().find(|c| c.value() >= q) {
                return Err(InstanceError::InvariantViolation {
                    index,
                    msg: format!("coefficient {} is not an element of F_{}", c.value(), q),
                });
            }
            if row.accept.is_empty() {
                return Err(InstanceError::InvariantViolation {
                    index,
                    msg: "acceptance set is empty".into(),
                });
            }
            if row.accept.len() >= q as usize {
                return Err(InstanceError::InvariantViolation {
                    index,
                    msg: format!("acceptance set has {} elements; must be a proper subset of F_{}", row.accept.len(), q),
                });
            }
            if let Some(f) = row.accept.iter().find(|f| f.value() >= q) {
                return Err(InstanceError::InvariantViolation {
                    index,
                    msg: format!("acceptance value {} is not an element of F_{}", f.value(), q),
                });
            }
            if row.accept.windows(2).any(|w| w[0] >= w[1]) {
                return Err(InstanceError::InvariantViolation {
                    index,
                    msg: "acceptance set has duplicate elements".into(),
                });
            }
        }
        let masks = if q <= 64 {
            Some(
                rows.iter()
                    .map(|row| row.accept.iter().fold(0u64, |m, f| m | 1 << f.value()))
                    .collect(),
            )
        } else {
            None
        };
        Ok(Instance { spec, n, rows, masks })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Constraint] {
        &self.rows
    }

    /// The linear form of row `i` evaluated at `values` (no length check).
    pub(crate) fn linear_form(&self, i: usize, values: &[FieldElement]) -> FieldElement {
        let spec = &self.spec;
        let mut acc = FieldElement::ZERO;
        for (c, x) in self.rows[i].coeffs.iter().zip(values) {
            if !c.is_zero() && !x.is_zero() {
                acc = spec.add(acc, spec.mul(*c, *x));
            }
        }
        acc
    }

    pub(crate) fn row_satisfied(&self, i: usize, values: &[FieldElement]) -> bool {
        let v = self.linear_form(i, values);
        match &self.masks {
            Some(masks) => masks[i] & (1 << v.value()) != 0,
            None => self.rows[i].accepts(v),
        }
    }

    /// Number of satisfied constraints, without building a mask vector.
    pub(crate) fn satisfied_count(&self, values: &[FieldElement]) -> usize {
        (0..self.rows.len())
            .filter(|&i| self.row_satisfied(i, values))
            .count()
    }

    /// Evaluates an assignment: which constraints hold, how many, and the
    /// exact ratio.
    pub fn evaluate(&self, x: &Assignment) -> Result<EvalResult, InstanceError> {
        if x.values.len() != self.n {
            return Err(InstanceError::DimensionMismatch {
                expected: self.n,
                got: x.values.len(),
            });
        }
        let mask: Vec<bool> = (0..self.rows.len())
            .map(|i| self.row_satisfied(i, &x.values))
            .collect();
        let satisfied = mask.iter().filter(|&&b| b).count();
        Ok(EvalResult { satisfied, mask })
    }

    /// `Some(r)` if every acceptance set has size `r`, else `None`.
    pub fn uniform_acceptance_size(&self) -> Option<usize> {
        let r = self.rows[0].accept.len();
        self.rows.iter().all(|row| row.accept.len() == r).then_some(r)
    }

    /// Average acceptance probability of a uniformly random assignment,
    /// `(1/m) * sum_i |F_i| / q`; equals `r/q` on uniform-`r` instances.
    pub fn baseline_ratio(&self) -> Rat {
        let total: usize = self.rows.iter().map(|row| row.accept.len()).sum();
        Rat::new(total as i64, self.rows.len() as i64 * i64::from(self.spec.q()))
    }

    /// Parses the line-based text format.
    pub fn parse(text: &str) -> Result<Instance, InstanceError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (line_no, header) = lines
            .next()
            .ok_or_else(|| InstanceError::Syntax { line: 1, msg: "missing header".into() })?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 4 || fields[0] != "linsat" {
            return Err(InstanceError::Syntax {
                line: line_no,
                msg: "expected header `linsat <q> <n> <m>`".into(),
            });
        }
        let q: u32 = parse_num(fields[1], line_no, "q")?;
        let n: usize = parse_num(fields[2], line_no, "n")?;
        let m: usize = parse_num(fields[3], line_no, "m")?;
        let spec = FieldSpec::from_order(q)?;

        let mut rows = Vec::with_capacity(m);
        let mut last_line = line_no;
        for index in 0..m {
            let (line_no, line) = lines.next().ok_or_else(|| InstanceError::Syntax {
                line: last_line + 1,
                msg: format!("expected {} constraint lines, found {}", m, index),
            })?;
            last_line = line_no;
            let (lhs, rhs) = line.split_once('|').ok_or_else(|| InstanceError::Syntax {
                line: line_no,
                msg: "constraint line needs a `|` separator".into(),
            })?;
            let coeffs = parse_elements(&spec, lhs, line_no)?;
            if coeffs.len() != n {
                return Err(InstanceError::Syntax {
                    line: line_no,
                    msg: format!("expected {} coefficients, found {}", n, coeffs.len()),
                });
            }
            let accept = parse_elements(&spec, rhs, line_no)?;
            if accept.windows(2).any(|w| w[0] >= w[1]) {
                return Err(InstanceError::Syntax {
                    line: line_no,
                    msg: "acceptance list must be strictly increasing".into(),
                });
            }
            rows.push(Constraint { coeffs, accept });
        }
        if let Some((line_no, _)) = lines.next() {
            return Err(InstanceError::Syntax {
                line: line_no,
                msg: "unexpected content after the last constraint".into(),
            });
        }
        Instance::new(spec, n, rows)
    }

    /// Canonical text rendering; `parse(serialize(inst)) == inst`.
    pub fn serialize(&self) -> String {
        let mut out = format!("linsat {} {} {}\n", self.spec.q(), self.n, self.rows.len());
        for row in &self.rows {
            let coeffs = join_elements(&row.coeffs);
            let accept = join_elements(&row.accept);
            out.push_str(&coeffs);
            out.push_str(" | ");
            out.push_str(&accept);
            out.push('\n');
        }
        out
    }
}

fn parse_num<T: std::str::FromStr>(s: &str, line: usize, name: &str) -> Result<T, InstanceError> {
    s.parse().map_err(|_| InstanceError::Syntax {
        line,
        msg: format!("invalid {}: `{}`", name, s),
    })
}

fn parse_elements(spec: &FieldSpec, s: &str, line: usize) -> Result<Vec<FieldElement>, InstanceError> {
    s.split_whitespace()
        .map(|tok| {
            let v: u32 = parse_num(tok, line, "element")?;
            spec.try_elem(v).map_err(|_| InstanceError::Syntax {
                line,
                msg: format!("element {} out of range for F_{}", v, spec.q()),
            })
        })
        .collect()
}

fn join_elements(elements: &[FieldElement]) -> String {
    elements
        .iter()
        .map(|e| e.value().to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// A candidate solution: one field element per variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    values: Vec<FieldElement>,
}

impl Assignment {
    pub fn new(values: Vec<FieldElement>) -> Assignment {
        Assignment { values }
    }

    pub fn values(&self) -> &[FieldElement] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Parses one line of decimal element encodings.
    pub fn parse(spec: &FieldSpec, line: &str) -> Result<Assignment, InstanceError> {
        Ok(Assignment { values: parse_elements(spec, line, 1)? })
    }

    pub fn serialize(&self) -> String {
        join_elements(&self.values)
    }
}

/// Outcome of evaluating an assignment against an instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalResult {
    satisfied: usize,
    mask: Vec<bool>,
}

impl EvalResult {
    /// Number of satisfied constraints.
    pub fn satisfied(&self) -> usize {
        self.satisfied
    }

    /// Total number of constraints.
    pub fn total(&self) -> usize {
        self.mask.len()
    }

    /// Exact satisfaction ratio `s/m`.
    pub fn ratio(&self) -> Rat {
        Rat::new(self.satisfied as i64, self.mask.len() as i64)
    }

    /// Per-constraint satisfaction flags.
    pub fn mask(&self) -> &[bool] {
        &self.mask
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2_instance() -> Instance {
        // x1 in {0}, x1 in {1}, x2 in {0} over F_2
        let spec = FieldSpec::from_order(2).unwrap();
        let one = spec.one();
        let zero = spec.zero();
        let rows = vec![
            Constraint::new(vec![one, zero], vec![zero]),
            Constraint::new(vec![one, zero], vec![one]),
            Constraint::new(vec![zero, one], vec![zero]),
        ];
        Instance::new(spec, 2, rows).unwrap()
    }

    #[test]
    fn evaluate_counts_and_ratio() {
        let inst = f2_instance();
        let spec = inst.spec().clone();
        let x = Assignment::new(vec![spec.zero(), spec.zero()]);
        let eval = inst.evaluate(&x).unwrap();
        assert_eq!(eval.satisfied(), 2);
        assert_eq!(eval.ratio(), Rat::new(2, 3));
        assert_eq!(eval.mask(), &[true, false, true]);
    }

    #[test]
    fn zero_row_satisfied_iff_zero_accepted() {
        // all-zero row: the linear form is 0 regardless of x
        let spec = FieldSpec::from_order(5).unwrap();
        let zero = spec.zero();
        let rows = vec![
            // F = F_5 \ {3}: contains 0, so always satisfied
            Constraint::new(
                vec![zero; 2],
                vec![spec.elem(0), spec.elem(1), spec.elem(2), spec.elem(4)],
            ),
            // F = F_5 \ {0}: excludes 0, so never satisfied
            Constraint::new(
                vec![zero; 2],
                vec![spec.elem(1), spec.elem(2), spec.elem(3), spec.elem(4)],
            ),
        ];
        let inst = Instance::new(spec.clone(), 2, rows).unwrap();
        for a in 0..5 {
            for b in 0..5 {
                let x = Assignment::new(vec![spec.elem(a), spec.elem(b)]);
                let eval = inst.evaluate(&x).unwrap();
                assert_eq!(eval.mask(), &[true, false]);
            }
        }
    }

    #[test]
    fn dimension_mismatch() {
        let inst = f2_instance();
        let spec = inst.spec().clone();
        let x = Assignment::new(vec![spec.zero()]);
        assert_eq!(
            inst.evaluate(&x),
            Err(InstanceError::DimensionMismatch { expected: 2, got: 1 })
        );
    }

    #[test]
    fn uniform_acceptance_size_cases() {
        let spec = FieldSpec::from_order(4).unwrap();
        let rows = vec![
            Constraint::new(vec![spec.one()], vec![spec.elem(0), spec.elem(2)]),
            Constraint::new(vec![spec.one()], vec![spec.elem(1), spec.elem(3)]),
        ];
        let inst = Instance::new(spec.clone(), 1, rows).unwrap();
        assert_eq!(inst.uniform_acceptance_size(), Some(2));

        let rows = vec![
            Constraint::new(vec![spec.one()], vec![spec.elem(0)]),
            Constraint::new(vec![spec.one()], vec![spec.elem(1), spec.elem(3)]),
        ];
        let inst = Instance::new(spec.clone(), 1, rows).unwrap();
        assert_eq!(inst.uniform_acceptance_size(), None);

        let rows = vec![Constraint::new(vec![spec.one()], vec![spec.elem(2)])];
        let inst = Instance::new(spec, 1, rows).unwrap();
        assert_eq!(inst.uniform_acceptance_size(), Some(1));
    }

    #[test]
    fn baseline_ratio_cases() {
        // uniform q=5, r=2 -> 2/5
        let spec = FieldSpec::from_order(5).unwrap();
        let rows = vec![
            Constraint::new(vec![spec.one()], vec![spec.elem(0), spec.elem(1)]),
            Constraint::new(vec![spec.one()], vec![spec.elem(2), spec.elem(4)]),
        ];
        let inst = Instance::new(spec, 1, rows).unwrap();
        assert_eq!(inst.baseline_ratio(), Rat::new(2, 5));

        // q=4, sizes {1, 3} -> (1/4 + 3/4) / 2 = 1/2
        let spec = FieldSpec::from_order(4).unwrap();
        let rows = vec![
            Constraint::new(vec![spec.one()], vec![spec.elem(0)]),
            Constraint::new(vec![spec.one()], vec![spec.elem(1), spec.elem(2), spec.elem(3)]),
        ];
        let inst = Instance::new(spec, 1, rows).unwrap();
        assert_eq!(inst.baseline_ratio(), Rat::new(1, 2));

        // q=2, r=1 -> 1/2
        let inst = f2_instance();
        assert_eq!(inst.baseline_ratio(), Rat::new(1, 2));
    }

    #[test]
    fn parse_serialize_round_trip() {
        let text = "linsat 3 2 2\n1 2 | 0 2\n0 1 | 1\n";
        let inst = Instance::parse(text).unwrap();
        assert_eq!(inst.m(), 2);
        assert_eq!(inst.n(), 2);
        assert_eq!(inst.serialize(), text);
        assert_eq!(Instance::parse(&inst.serialize()).unwrap(), inst);
    }

    #[test]
    fn parse_ignores_comments_and_blanks() {
        let text = "# generated\n\nlinsat 2 1 1\n# row\n1 | 0\n";
        let inst = Instance::parse(text).unwrap();
        assert_eq!(inst.m(), 1);
    }

    #[test]
    fn parse_rejects_full_acceptance_set() {
        let text = "linsat 2 1 1\n1 | 0 1\n";
        match Instance::parse(text) {
            Err(InstanceError::InvariantViolation { index: 0, .. }) => {}
            other => panic!("expected invariant violation, got {:?}", other),
        }
    }

    #[test]
    fn parse_rejects_out_of_range_coefficient() {
        let text = "linsat 3 2 1\n1 3 | 0\n";
        match Instance::parse(text) {
            Err(InstanceError::Syntax { line: 2, .. }) => {}
            other => panic!("expected syntax error on line 2, got {:?}", other),
        }
    }

    #[test]
    fn parse_rejects_unsorted_acceptance() {
        let text = "linsat 5 1 1\n1 | 3 1\n";
        match Instance::parse(text) {
            Err(InstanceError::Syntax { line: 2, .. }) => {}
            other => panic!("expected syntax error, got {:?}", other),
        }
    }

    #[test]
    fn parse_reports_missing_rows() {
        let text = "linsat 2 1 2\n1 | 0\n";
        assert!(matches!(
            Instance::parse(text),
            Err(InstanceError::Syntax { .. })
        ));
    }

    #[test]
    fn assignment_round_trip() {
        let spec = FieldSpec::from_order(7).unwrap();
        let x = Assignment::new(vec![spec.elem(0), spec.elem(6), spec.elem(3)]);
        let line = x.serialize();
        assert_eq!(line, "0 6 3");
        assert_eq!(Assignment::parse(&spec, &line).unwrap(), x);
    }
}
