//! One function per subcommand. Each builds a report; the caller prints it.

use std::str::FromStr;

use num_rational::BigRational;

use ncaseed::assume::{branch, Assumptions};
use ncaseed::classify::{
    b1_relations, b2_relations, check_regularity, iso_condition, iso_condition_symbolic,
    morita_condition, omega_b, proof_sequences, reproduce_table, twl_relations,
    verify_morita_sequence, TableId,
};
use ncaseed::exprparse::{parse_assumption, parse_ncpoly, parse_ncpoly_of_degree};
use ncaseed::g2solver::{check_g2_membership, relations_from_pair};
use ncaseed::geometry::{is_g_automorphism, parse_pair_spec};
use ncaseed::superpot::{
    aut_membership, is_standard_under, is_superpotential, twisting_matrix_under,
};
use ncaseed::{
    AlgebraInstance, Error, Mat2, NCPoly, Result, RowReport, Scalar, TypeTag, VerificationReport,
};

/// Failure modes of a command before any check runs.
#[derive(Debug)]
pub enum Usage {
    Msg(String),
    Lib(Error),
}

impl From<Error> for Usage {
    fn from(e: Error) -> Self {
        Usage::Lib(e)
    }
}

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Usage::Msg(m) => f.write_str(m),
            Usage::Lib(e) => write!(f, "{e}"),
        }
    }
}

/// Errors caused by the input rather than by a failed check.
pub fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Syntax { .. }
            | Error::MixedDegree { .. }
            | Error::UnknownSymbol(_)
            | Error::UnknownType(_)
            | Error::WrongDegree { .. }
            | Error::ReservedName(_)
            | Error::AssumptionViolated(_)
            | Error::NonScalarEntry(_)
            | Error::InvalidPair(_)
            | Error::ZeroInput
            | Error::ZeroVector
            | Error::SingularMatrix
            | Error::DegreeTooSmall
            | Error::InvalidSequence(_)
            | Error::ArityMismatch { .. }
            | Error::TypeMismatch
    )
}

type Out = std::result::Result<VerificationReport, Usage>;

fn single(table: &str, row: RowReport) -> VerificationReport {
    VerificationReport {
        table: table.into(),
        rows: vec![row],
    }
}

/// Run a check; a library error that is not an input error fails the row.
fn guarded(
    r: &mut RowReport,
    f: impl FnOnce(&mut RowReport) -> Result<()>,
) -> std::result::Result<(), Usage> {
    match f(r) {
        Ok(()) => Ok(()),
        Err(e) if is_input_error(&e) => Err(Usage::Lib(e)),
        Err(e) => {
            r.fail(e.to_string());
            Ok(())
        }
    }
}

fn poly_is_rational(p: &NCPoly) -> bool {
    p.terms().all(|(_, c)| c.as_rational().is_some())
}

fn require_rational(what: &str, p: &NCPoly, symbolic: bool) -> std::result::Result<(), Usage> {
    if symbolic || poly_is_rational(p) {
        Ok(())
    } else {
        Err(Usage::Msg(format!(
            "{what} has symbolic coefficients; pass --symbolic to allow parameters"
        )))
    }
}

fn assumptions(clauses: &[String]) -> std::result::Result<Assumptions, Usage> {
    let mut asm = Assumptions::new();
    for c in clauses {
        asm = parse_assumption(c, &asm)?;
    }
    Ok(asm)
}

pub fn check_tsp(expr: &str, clauses: &[String], symbolic: bool) -> Out {
    let omega = parse_ncpoly_of_degree(expr, 4)?;
    require_rational("the potential", &omega, symbolic)?;
    let asm = assumptions(clauses)?;
    let omega = omega.apply_assumptions(&asm);
    let mut r = RowReport::new("check-tsp", &omega.to_string());
    r.assume(asm.to_string());
    guarded(&mut r, |r| {
        match twisting_matrix_under(&omega, &asm)? {
            Some(theta) => {
                r.detail("ok: twisted superpotential");
                r.witness(format!("theta = {theta}"));
            }
            None => r.fail("no twisting matrix"),
        }
        r.detail(format!("superpotential: {}", is_superpotential(&omega)?));
        r.detail(format!("standard: {}", is_standard_under(&omega, &asm)?));
        Ok(())
    })?;
    Ok(single("check-tsp", r))
}

pub fn asreg(expr: Option<&str>, rels: &[String], clauses: &[String], symbolic: bool) -> Out {
    let asm = assumptions(clauses)?;
    let (g1, g2) = match (expr, rels) {
        (Some(e), []) => {
            let omega = parse_ncpoly_of_degree(e, 4)?;
            require_rational("the potential", &omega, symbolic)?;
            let d = |v| omega.left_derivative(v);
            (d(ncaseed::Gen::X)?, d(ncaseed::Gen::Y)?)
        }
        (None, [a, b]) => {
            let g1 = parse_ncpoly_of_degree(a, 3)?;
            let g2 = parse_ncpoly_of_degree(b, 3)?;
            require_rational("a relation", &g1, symbolic)?;
            require_rational("a relation", &g2, symbolic)?;
            (g1, g2)
        }
        _ => {
            return Err(Usage::Msg(
                "give either -e POTENTIAL or exactly two --rel RELATION".into(),
            ))
        }
    };
    let mut r = RowReport::new("asreg", "AS-regularity");
    guarded(&mut r, |r| check_regularity(r, &g1, &g2, &asm))?;
    Ok(single("asreg", r))
}

fn read_spec(
    path: &str,
    clauses: &[String],
) -> std::result::Result<(ncaseed::GeometricPair, Assumptions), Usage> {
    let text = std::fs::read_to_string(path).map_err(|e| Usage::Msg(format!("{path}: {e}")))?;
    let (pair, mut spec_clauses) = parse_pair_spec(&text)?;
    spec_clauses.extend(clauses.iter().cloned());
    let asm = assumptions(&spec_clauses)?;
    Ok((pair, asm))
}

pub fn derive(path: &str, clauses: &[String]) -> Out {
    let (pair, asm) = read_spec(path, clauses)?;
    let mut rows = Vec::new();
    let mut r = RowReport::new("derive", "sigma is an automorphism of E");
    r.assume(asm.to_string());
    let valid = match is_g_automorphism(&pair, &asm) {
        Ok(v) => v,
        Err(e) if is_input_error(&e) => return Err(e.into()),
        Err(e) => {
            r.fail(e.to_string());
            false
        }
    };
    r.check(valid, "sigma maps every component onto its target");
    rows.push(r);
    if valid {
        match relations_from_pair(&pair, &asm) {
            Ok(leaves) => {
                for (k, leaf) in leaves.iter().enumerate() {
                    let mut r = RowReport::new("derive", &format!("branch {}", k + 1));
                    r.assume(leaf.assumptions.to_string());
                    for g in &leaf.basis {
                        r.witness(g.to_string());
                    }
                    r.check(
                        leaf.dimension == 2,
                        format!("relation space has dimension {}", leaf.dimension),
                    );
                    rows.push(r);
                }
            }
            Err(e) if is_input_error(&e) => return Err(e.into()),
            Err(e) => {
                let mut r = RowReport::new("derive", "relations");
                r.fail(e.to_string());
                rows.push(r);
            }
        }
    }
    Ok(VerificationReport {
        table: "derive".into(),
        rows,
    })
}

pub fn g2(path: &str, expr: &str, clauses: &[String]) -> Out {
    let (pair, asm) = read_spec(path, clauses)?;
    let f = parse_ncpoly(expr)?;
    let leaves = match branch(&asm, |a| {
        check_g2_membership(&f, &pair.apply_assumptions(a), a)
    }) {
        Ok(l) => l,
        Err(e) if is_input_error(&e) => return Err(e.into()),
        Err(e) => {
            let mut r = RowReport::new("g2", &f.to_string());
            r.fail(e.to_string());
            return Ok(single("g2", r));
        }
    };
    let rows = leaves
        .into_iter()
        .map(|leaf| {
            let mut r = RowReport::new("g2", &format!("{f} [{}]", leaf.assumptions));
            r.assume(leaf.assumptions.to_string());
            r.check(leaf.value, "vanishes on every point of the graph of sigma");
            r
        })
        .collect();
    Ok(VerificationReport {
        table: "g2".into(),
        rows,
    })
}

/// A rational binding value: an integer or a fraction `p/q`.
fn rational(text: &str) -> std::result::Result<Scalar, Usage> {
    BigRational::from_str(text.trim())
        .map(Scalar::from_rational)
        .map_err(|_| {
            Usage::Msg(format!(
                "`{}` is not a rational number; pass --symbolic for parameters",
                text.trim()
            ))
        })
}

fn instance(
    tag: TypeTag,
    text: &str,
    symbolic: bool,
) -> std::result::Result<AlgebraInstance, Usage> {
    if symbolic {
        return Ok(AlgebraInstance::parse(tag, text)?);
    }
    let mut bindings = Vec::new();
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (n, v) = part
            .split_once('=')
            .ok_or_else(|| Usage::Msg(format!("expected name=value, found `{part}`")))?;
        bindings.push((n.trim().to_string(), rational(v)?));
    }
    let inst = AlgebraInstance::new(tag, &bindings)?;
    for (p, v) in tag.params().iter().zip(inst.values()) {
        if v.as_rational().is_none() {
            return Err(Usage::Msg(format!(
                "{tag}: `{p}` needs a value; pass --symbolic to leave it as a parameter"
            )));
        }
    }
    Ok(inst)
}

pub struct PairArgs<'a> {
    pub tag: &'a str,
    pub rhs_tag: Option<&'a str>,
    pub lhs: Option<&'a str>,
    pub rhs: Option<&'a str>,
    pub symbolic: bool,
}

impl PairArgs<'_> {
    fn instances(&self) -> std::result::Result<(AlgebraInstance, AlgebraInstance), Usage> {
        let t1 = TypeTag::parse(self.tag)?;
        let t2 = match self.rhs_tag {
            Some(t) => TypeTag::parse(t)?,
            None => t1,
        };
        let a = instance(t1, self.lhs.unwrap_or(""), self.symbolic)?;
        let b = instance(t2, self.rhs.unwrap_or(""), self.symbolic)?;
        Ok((a, b))
    }
}

fn show(m: &Mat2) -> String {
    format!("[[{}, {}], [{}, {}]]", m.a, m.b, m.c, m.d)
}

pub fn iso(args: &PairArgs<'_>) -> Out {
    if args.symbolic && args.lhs.is_none() && args.rhs.is_none() && args.rhs_tag.is_none() {
        return iso_symbolic(TypeTag::parse(args.tag)?);
    }
    let (a, b) = args.instances()?;
    let mut r = RowReport::new("iso", &format!("{a} ~ {b}"));
    guarded(&mut r, |r| {
        let res = iso_condition(&a, &b)?;
        if let Some(w) = &res.witness {
            r.witness(format!("rho = {}", show(w)));
        }
        if res.isomorphic {
            r.detail(format!("isomorphic ({})", res.note));
        } else {
            r.fail(format!("not isomorphic ({})", res.note));
        }
        Ok(())
    })?;
    Ok(single("iso", r))
}

fn iso_symbolic(tag: TypeTag) -> Out {
    let mut r = RowReport::new("iso", &format!("{tag} generic"));
    guarded(&mut r, |r| {
        match iso_condition_symbolic(tag)? {
            None => r.detail(format!("closed form: {}", tag.name())),
            Some(branches) => {
                r.check(!branches.is_empty(), "at least one branch");
                for br in branches {
                    r.witness(format!("[{}] rho = {}", br.assumptions, show(&br.witness)));
                }
            }
        }
        Ok(())
    })?;
    Ok(single("iso", r))
}

pub fn morita(args: &PairArgs<'_>, sequences: bool) -> Out {
    let mut rows = Vec::new();
    if args.lhs.is_some() || args.rhs.is_some() || args.rhs_tag.is_some() || !sequences {
        let (a, b) = args.instances()?;
        let mut r = RowReport::new("morita", &format!("{a} ~ {b}"));
        guarded(&mut r, |r| {
            r.check(
                morita_condition(&a, &b)?,
                "graded module categories are equivalent",
            );
            Ok(())
        })?;
        rows.push(r);
    }
    if sequences {
        for s in proof_sequences() {
            let mut r = RowReport::new("morita", &s.name);
            r.assume(s.assumptions.to_string());
            guarded(&mut r, |r| {
                let chk = verify_morita_sequence(&s.a, &s.b, &s.sequence, &s.assumptions)?;
                for f in &chk.failures {
                    r.fail(f.clone());
                }
                if chk.ok {
                    r.detail(format!("ok: all {} residues", s.sequence.period));
                }
                for (k, m) in s.sequence.residues.iter().enumerate() {
                    r.witness(format!("rho_{k} = {}", show(m)));
                }
                Ok(())
            })?;
            rows.push(r);
        }
    }
    Ok(VerificationReport {
        table: "morita".into(),
        rows,
    })
}

pub fn tables(id: &str) -> std::result::Result<Vec<VerificationReport>, Usage> {
    if id == "all" {
        return Ok(TableId::ALL.iter().map(|&t| reproduce_table(t)).collect());
    }
    Ok(vec![reproduce_table(TableId::parse(id)?)])
}

pub fn wl(alpha: Option<&str>, symbolic: bool) -> Out {
    let a = match alpha {
        Some(t) if symbolic => ncaseed::parse_scalar(t)?,
        Some(t) => rational(t)?,
        None => Scalar::param("alpha"),
    };
    let mut asm = Assumptions::new();
    asm = asm
        .with_nonzero(&a)
        .ok_or_else(|| Usage::Lib(Error::AssumptionViolated("alpha != 0".into())))?;
    let omega = omega_b();
    let mut rows = Vec::new();

    let mut r = RowReport::new("wl", "omega_B is a superpotential");
    guarded(&mut r, |r| {
        r.check(is_superpotential(&omega)?, "invariant under rotation");
        Ok(())
    })?;
    rows.push(r);

    let mut r = RowReport::new("wl", "every theta in GL2 preserves omega_B");
    guarded(&mut r, |r| {
        let theta = Mat2::new(
            Scalar::param("p"),
            Scalar::param("q"),
            Scalar::param("r"),
            Scalar::param("s"),
        );
        match aut_membership(&omega, &theta)? {
            Some(l) => {
                r.witness(format!("lambda = {l}"));
                r.check(!l.is_zero(), "omega_B is an eigenvector of theta");
            }
            None => r.fail("omega_B is not an eigenvector of the generic theta"),
        }
        Ok(())
    })?;
    rows.push(r);

    let mut r = RowReport::new("wl", &format!("B1({a})"));
    guarded(&mut r, |r| {
        let (g1, g2) = b1_relations(&a)?;
        check_regularity(r, &g1, &g2, &asm)
    })?;
    rows.push(r);

    let mut r = RowReport::new("wl", "B2");
    guarded(&mut r, |r| {
        let (g1, g2) = b2_relations()?;
        check_regularity(r, &g1, &g2, &Assumptions::new())
    })?;
    rows.push(r);

    let mut r = RowReport::new("wl", "TWL");
    guarded(&mut r, |r| {
        let (g1, g2) = twl_relations();
        check_regularity(r, &g1, &g2, &Assumptions::new())
    })?;
    rows.push(r);

    Ok(VerificationReport {
        table: "wl".into(),
        rows,
    })
}
