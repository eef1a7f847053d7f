//! Built-in identities and the `.identity` text format.
//!
//! ```text
//! [identity]
//! name = "theorem1"
//! kind = wz
//! carlson_a = 1
//! z = -1
//! p = [1, 4]
//! num_poch = [("-n", 2), ("1/2", 1)]
//! den_poch = [("n + 3/2", 2)]
//! fact_pow = 1
//! rhs_base = 1/4
//! rhs_poch = [(3/2, 2), (5/4, -1), (3/4, -1)]
//! cert_num = "-(6*n^2+10*n+4+k-2*k^2)*k"
//! cert_den = "(n-k+1)^2*(4*k+1)"
//! ```
//!
//! The summand is `z^k p(k) prod (arg)_k^pow / prod (arg)_k^pow / k!^fact_pow`
//! and the right side `rhs_base^n prod (arg)_n^pow`. Pochhammer arguments
//! are linear in `n` with an integer coefficient of `n`.

mod expr;
mod format;

pub use format::Pos;

use crate::algebra::{fmt_rat, int, BigRat, Poly2, RatFunc2, UPoly, Var};
use crate::term::{ClosedForm, HyperTerm, PochFactor, Prefactor};
use crate::wz::{Kind, WZIdentity};
use expr::{parse_poly, ExprError};
use format::{statements, Stmt, Value};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("line {line}, column {col}: expected {expected}, found {found}")]
    Parse {
        line: usize,
        col: usize,
        expected: String,
        found: String,
    },
    #[error("line {line}, column {col}: {msg}")]
    Semantic {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
}

impl CatalogError {
    fn parse(p: Pos, expected: &str, found: &str) -> Self {
        CatalogError::Parse {
            line: p.line,
            col: p.col,
            expected: expected.into(),
            found: found.into(),
        }
    }

    fn semantic(p: Pos, msg: impl Into<String>) -> Self {
        CatalogError::Semantic {
            line: p.line,
            col: p.col,
            msg: msg.into(),
        }
    }
}

/// `(b*n + c)_k^pow` with `pow > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PochEntry {
    pub n_coeff: i64,
    pub offset: BigRat,
    pub pow: u32,
}

impl PochEntry {
    fn arg_text(&self) -> String {
        Poly2::linear(int(self.n_coeff), BigRat::zero(), self.offset.clone()).to_string()
    }
}

/// The structural content of one `[identity]` section.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityFile {
    pub name: String,
    pub kind: Kind,
    pub carlson_a: Option<u32>,
    pub z: BigRat,
    /// Ascending powers of `k`.
    pub p: Vec<BigRat>,
    pub num_poch: Vec<PochEntry>,
    pub den_poch: Vec<PochEntry>,
    pub fact_pow: u32,
    pub rhs_base: BigRat,
    pub rhs_poch: Vec<(BigRat, i32)>,
    pub cert_num: Option<Poly2>,
    pub cert_den: Option<Poly2>,
    pub prefactor_rational: BigRat,
    pub prefactor_sqrt: BigRat,
    pub erratum: bool,
    pub inv_pi_multiple: Option<u32>,
}

const KEYS: &[&str] = &[
    "carlson_a",
    "cert_den",
    "cert_num",
    "den_poch",
    "erratum",
    "fact_pow",
    "inv_pi_multiple",
    "kind",
    "name",
    "num_poch",
    "p",
    "prefactor_rational",
    "prefactor_sqrt",
    "rhs_base",
    "rhs_poch",
    "z",
];

fn expr_error(e: ExprError, at: Pos) -> CatalogError {
    match e {
        ExprError::Syntax {
            offset,
            expected,
            found,
        } => CatalogError::Parse {
            line: at.line,
            col: at.col + offset,
            expected,
            found,
        },
        ExprError::Semantic { offset, msg } => CatalogError::Semantic {
            line: at.line,
            col: at.col + offset,
            msg,
        },
    }
}

fn as_rat(v: &Value, at: Pos, what: &str) -> Result<BigRat, CatalogError> {
    match v {
        Value::Rat(r) => Ok(r.clone()),
        other => Err(CatalogError::semantic(
            at,
            format!("{what} must be a number, found {}", other.kind_name()),
        )),
    }
}

fn as_int(v: &Value, at: Pos, what: &str) -> Result<i64, CatalogError> {
    let r = as_rat(v, at, what)?;
    if !r.is_integer() {
        return Err(CatalogError::semantic(
            at,
            format!("{what} must be an integer"),
        ));
    }
    i64::try_from(r.to_integer())
        .map_err(|_| CatalogError::semantic(at, format!("{what} is out of range")))
}

fn as_uint(v: &Value, at: Pos, what: &str, min: i64) -> Result<u32, CatalogError> {
    let i = as_int(v, at, what)?;
    if i < min {
        return Err(CatalogError::semantic(
            at,
            format!("{what} must be at least {min}"),
        ));
    }
    u32::try_from(i).map_err(|_| CatalogError::semantic(at, format!("{what} is out of range")))
}

fn as_list<'a>(v: &'a Value, at: Pos, what: &str) -> Result<&'a [(Value, Pos)], CatalogError> {
    match v {
        Value::List(items) => Ok(items),
        other => Err(CatalogError::semantic(
            at,
            format!("{what} must be a list, found {}", other.kind_name()),
        )),
    }
}

type Item<'a> = &'a (Value, Pos);

fn as_pair<'a>(v: &'a Value, at: Pos, what: &str) -> Result<(Item<'a>, Item<'a>), CatalogError> {
    match v {
        Value::Tuple(items) if items.len() == 2 => Ok((&items[0], &items[1])),
        _ => Err(CatalogError::semantic(
            at,
            format!("{what} entries must be pairs (value, power)"),
        )),
    }
}

fn as_poly(v: &Value, at: Pos, what: &str) -> Result<Poly2, CatalogError> {
    match v {
        Value::Str(s, start) => parse_poly(s).map_err(|e| expr_error(e, *start)),
        other => Err(CatalogError::semantic(
            at,
            format!(
                "{what} must be a quoted expression, found {}",
                other.kind_name()
            ),
        )),
    }
}

fn poch_list(v: &Value, at: Pos, what: &str) -> Result<Vec<PochEntry>, CatalogError> {
    let mut out = Vec::new();
    for (item, ipos) in as_list(v, at, what)? {
        let ((arg, apos), (pw, ppos)) = as_pair(item, *ipos, what)?;
        let poly = as_poly(arg, *apos, "a Pochhammer argument")?;
        if poly.mentions(Var::K) || poly.degree(Var::N).unwrap_or(0) > 1 {
            return Err(CatalogError::semantic(
                *apos,
                "a Pochhammer argument must be linear in n and free of k",
            ));
        }
        let b = poly.coeff(1, 0);
        if !b.is_integer() {
            return Err(CatalogError::semantic(
                *apos,
                "the coefficient of n in a Pochhammer argument must be an integer",
            ));
        }
        let n_coeff = i64::try_from(b.to_integer())
            .map_err(|_| CatalogError::semantic(*apos, "coefficient of n out of range"))?;
        out.push(PochEntry {
            n_coeff,
            offset: poly.coeff(0, 0),
            pow: as_uint(pw, *ppos, "a Pochhammer power", 1)?,
        });
    }
    Ok(out)
}

/// Parses every `[identity]` section of `text`.
pub fn parse_identities(text: &str) -> Result<Vec<IdentityFile>, CatalogError> {
    // key -> (value, key position, value position)
    type Entries = BTreeMap<String, (Value, Pos, Pos)>;
    let mut sections: Vec<(Pos, Entries)> = Vec::new();
    for stmt in statements(text)? {
        match stmt {
            Stmt::Section(name, pos) => {
                if name != "identity" {
                    return Err(CatalogError::semantic(
                        pos,
                        format!("unknown section `[{name}]`, expected `[identity]`"),
                    ));
                }
                sections.push((pos, BTreeMap::new()));
            }
            Stmt::Entry(key, kpos, value, vpos) => {
                let Some((_, map)) = sections.last_mut() else {
                    return Err(CatalogError::semantic(
                        kpos,
                        "entry before the first `[identity]` header",
                    ));
                };
                if !KEYS.contains(&key.as_str()) {
                    return Err(CatalogError::semantic(kpos, format!("unknown key `{key}`")));
                }
                if map.insert(key.clone(), (value, kpos, vpos)).is_some() {
                    return Err(CatalogError::semantic(
                        kpos,
                        format!("duplicate key `{key}`"),
                    ));
                }
            }
        }
    }
    sections
        .into_iter()
        .map(|(pos, map)| build(pos, &map))
        .collect()
}

/// Parses a text holding exactly one `[identity]` section.
pub fn parse_identity(text: &str) -> Result<IdentityFile, CatalogError> {
    let mut all = parse_identities(text)?;
    match all.len() {
        1 => Ok(all.pop().unwrap()),
        0 => Err(CatalogError::semantic(
            Pos { line: 1, col: 1 },
            "no `[identity]` section",
        )),
        _ => Err(CatalogError::semantic(
            Pos { line: 1, col: 1 },
            "more than one `[identity]` section",
        )),
    }
}

fn build(
    section: Pos,
    map: &BTreeMap<String, (Value, Pos, Pos)>,
) -> Result<IdentityFile, CatalogError> {
    let get = |k: &str| map.get(k).map(|(v, _, p)| (v, *p));
    let need = |k: &str| {
        get(k).ok_or_else(|| CatalogError::semantic(section, format!("missing key `{k}`")))
    };

    let name = match need("name")? {
        (Value::Str(s, _), _) | (Value::Word(s), _) => s.clone(),
        (_, p) => return Err(CatalogError::semantic(p, "name must be a string")),
    };
    let kind = match need("kind")? {
        (Value::Word(w), _) if w == "wz" => Kind::Wz,
        (Value::Word(w), _) if w == "numeric" => Kind::Numeric,
        (_, p) => return Err(CatalogError::semantic(p, "kind must be `wz` or `numeric`")),
    };
    let carlson_a = get("carlson_a")
        .map(|(v, p)| as_uint(v, p, "carlson_a", 1))
        .transpose()?;
    let (zv, zp) = need("z")?;
    let z = as_rat(zv, zp, "z")?;
    if z.is_zero() {
        return Err(CatalogError::semantic(zp, "z must be nonzero"));
    }
    let (pv, pp) = need("p")?;
    let p = as_list(pv, pp, "p")?
        .iter()
        .map(|(v, at)| as_rat(v, *at, "a coefficient of p"))
        .collect::<Result<Vec<_>, _>>()?;
    if p.iter().all(Zero::is_zero) {
        return Err(CatalogError::semantic(pp, "p must be a nonzero polynomial"));
    }
    let num_poch = get("num_poch")
        .map(|(v, at)| poch_list(v, at, "num_poch"))
        .transpose()?
        .unwrap_or_default();
    let den_poch = get("den_poch")
        .map(|(v, at)| poch_list(v, at, "den_poch"))
        .transpose()?
        .unwrap_or_default();
    let (fv, fp) = need("fact_pow")?;
    let fact_pow = as_uint(fv, fp, "fact_pow", 0)?;

    let rhs_base = match get("rhs_base") {
        Some((v, at)) => as_rat(v, at, "rhs_base")?,
        None if kind == Kind::Numeric => BigRat::one(),
        None => return Err(CatalogError::semantic(section, "missing key `rhs_base`")),
    };
    let mut rhs_poch = Vec::new();
    if let Some((v, at)) = get("rhs_poch") {
        for (item, ipos) in as_list(v, at, "rhs_poch")? {
            let ((a, apos), (pw, ppos)) = as_pair(item, *ipos, "rhs_poch")?;
            let arg = as_rat(a, *apos, "an rhs argument")?;
            let pw = as_int(pw, *ppos, "an rhs power")?;
            if pw == 0 {
                return Err(CatalogError::semantic(
                    *ppos,
                    "an rhs power must be nonzero",
                ));
            }
            rhs_poch.push((arg, pw as i32));
        }
    }

    let cert_num = get("cert_num")
        .map(|(v, at)| as_poly(v, at, "cert_num"))
        .transpose()?;
    let cert_den = get("cert_den")
        .map(|(v, at)| as_poly(v, at, "cert_den"))
        .transpose()?;
    if let (Some(d), Some((_, at))) = (&cert_den, get("cert_den")) {
        if d.is_zero() {
            return Err(CatalogError::semantic(
                at,
                "cert_den is the zero polynomial",
            ));
        }
    }
    if cert_num.is_none() && cert_den.is_some() {
        return Err(CatalogError::semantic(section, "cert_den without cert_num"));
    }

    let prefactor_rational = get("prefactor_rational")
        .map(|(v, at)| as_rat(v, at, "prefactor_rational"))
        .transpose()?
        .unwrap_or_else(BigRat::one);
    let prefactor_sqrt = match get("prefactor_sqrt") {
        Some((v, at)) => {
            let s = as_rat(v, at, "prefactor_sqrt")?;
            if !s.is_positive() {
                return Err(CatalogError::semantic(
                    at,
                    "prefactor_sqrt must be positive",
                ));
            }
            s
        }
        None => BigRat::one(),
    };
    let erratum = match get("erratum") {
        Some((Value::Word(w), _)) if w == "true" => true,
        Some((Value::Word(w), _)) if w == "false" => false,
        Some((_, at)) => return Err(CatalogError::semantic(at, "erratum must be true or false")),
        None => false,
    };
    let inv_pi_multiple = get("inv_pi_multiple")
        .map(|(v, at)| as_uint(v, at, "inv_pi_multiple", 1))
        .transpose()?;

    let file = IdentityFile {
        name,
        kind,
        carlson_a,
        z,
        p,
        num_poch,
        den_poch,
        fact_pow,
        rhs_base,
        rhs_poch,
        cert_num,
        cert_den,
        prefactor_rational,
        prefactor_sqrt,
        erratum,
        inv_pi_multiple,
    };
    if let (Some(a), Some((_, at))) = (file.carlson_a, get("carlson_a")) {
        let expected = file
            .num_poch
            .iter()
            .find(|e| e.n_coeff < 0)
            .map(|e| e.n_coeff.unsigned_abs());
        if expected != Some(a as u64) {
            return Err(CatalogError::semantic(
                at,
                match expected {
                    Some(e) => format!(
                        "carlson_a = {a} but the first negated numerator factor has n-coefficient -{e}"
                    ),
                    None => format!("carlson_a = {a} but no numerator factor has a negative n-coefficient"),
                },
            ));
        }
    }
    Ok(file)
}

fn list<T>(items: &[T], f: impl Fn(&T) -> String) -> String {
    format!("[{}]", items.iter().map(f).collect::<Vec<_>>().join(", "))
}

/// Canonical text: keys sorted, polynomials expanded in graded-lex order,
/// rationals as `a/b` with `b > 0`.
pub fn serialize_identity(id: &IdentityFile) -> String {
    let mut entries: BTreeMap<&str, String> = BTreeMap::new();
    if let Some(a) = id.carlson_a {
        entries.insert("carlson_a", a.to_string());
    }
    if let Some(d) = &id.cert_den {
        entries.insert("cert_den", format!("\"{d}\""));
    }
    if let Some(c) = &id.cert_num {
        entries.insert("cert_num", format!("\"{c}\""));
    }
    let poch = |v: &[PochEntry]| list(v, |e| format!("(\"{}\", {})", e.arg_text(), e.pow));
    entries.insert("den_poch", poch(&id.den_poch));
    if id.erratum {
        entries.insert("erratum", "true".into());
    }
    entries.insert("fact_pow", id.fact_pow.to_string());
    if let Some(m) = id.inv_pi_multiple {
        entries.insert("inv_pi_multiple", m.to_string());
    }
    entries.insert("kind", id.kind.as_str().into());
    entries.insert("name", format!("\"{}\"", id.name));
    entries.insert("num_poch", poch(&id.num_poch));
    entries.insert("p", list(&id.p, fmt_rat));
    if !id.prefactor_rational.is_one() {
        entries.insert("prefactor_rational", fmt_rat(&id.prefactor_rational));
    }
    if !id.prefactor_sqrt.is_one() {
        entries.insert("prefactor_sqrt", fmt_rat(&id.prefactor_sqrt));
    }
    entries.insert("rhs_base", fmt_rat(&id.rhs_base));
    entries.insert(
        "rhs_poch",
        list(&id.rhs_poch, |(a, p)| format!("({}, {p})", fmt_rat(a))),
    );
    entries.insert("z", fmt_rat(&id.z));

    let mut out = String::from("[identity]\n");
    for (k, v) in entries {
        let _ = writeln!(out, "{k} = {v}");
    }
    out
}

impl IdentityFile {
    pub fn to_identity(&self) -> WZIdentity {
        let mut poch = Vec::new();
        for e in &self.num_poch {
            poch.push(PochFactor::new(e.n_coeff, e.offset.clone(), e.pow as i32));
        }
        for e in &self.den_poch {
            poch.push(PochFactor::new(
                e.n_coeff,
                e.offset.clone(),
                -(e.pow as i32),
            ));
        }
        let term = HyperTerm {
            poch,
            fact_pow: self.fact_pow,
            z: self.z.clone(),
            p: UPoly::new(self.p.clone()),
            prefactor: Prefactor {
                rational: self.prefactor_rational.clone(),
                sqrt_of: self.prefactor_sqrt.clone(),
            },
        };
        let certificate = self.cert_num.as_ref().map(|num| {
            let den = self.cert_den.clone().unwrap_or_else(Poly2::one);
            RatFunc2::new(num.clone(), den).expect("cert_den checked nonzero")
        });
        WZIdentity {
            name: self.name.clone(),
            term,
            rhs: ClosedForm {
                base: self.rhs_base.clone(),
                poch_n: self.rhs_poch.clone(),
            },
            certificate,
            carlson_a: self.carlson_a,
            kind: self.kind,
            erratum: self.erratum,
            inv_pi_multiple: self.inv_pi_multiple,
        }
    }

    pub fn from_identity(id: &WZIdentity) -> IdentityFile {
        let entry = |f: &PochFactor| PochEntry {
            n_coeff: f.n_coeff,
            offset: f.offset.clone(),
            pow: f.power.unsigned_abs(),
        };
        IdentityFile {
            name: id.name.clone(),
            kind: id.kind,
            carlson_a: id.carlson_a,
            z: id.term.z.clone(),
            p: id.term.p.coeffs().to_vec(),
            num_poch: id
                .term
                .poch
                .iter()
                .filter(|f| f.power > 0)
                .map(entry)
                .collect(),
            den_poch: id
                .term
                .poch
                .iter()
                .filter(|f| f.power < 0)
                .map(entry)
                .collect(),
            fact_pow: id.term.fact_pow,
            rhs_base: id.rhs.base.clone(),
            rhs_poch: id.rhs.poch_n.clone(),
            cert_num: id.certificate.as_ref().map(|c| c.num().clone()),
            cert_den: id.certificate.as_ref().map(|c| c.den().clone()),
            prefactor_rational: id.term.prefactor.rational.clone(),
            prefactor_sqrt: id.term.prefactor.sqrt_of.clone(),
            erratum: id.erratum,
            inv_pi_multiple: id.inv_pi_multiple,
        }
    }
}

/// Built-in identities in catalog order, with their file text.
pub const BUILTINS: &[(&str, &str)] = &[
    ("ramanujan", include_str!("../../data/ramanujan.identity")),
    ("zeilberger", include_str!("../../data/zeilberger.identity")),
    ("theorem1", include_str!("../../data/theorem1.identity")),
    ("theorem2", include_str!("../../data/theorem2.identity")),
    ("theorem3", include_str!("../../data/theorem3.identity")),
    ("theorem4", include_str!("../../data/theorem4.identity")),
    ("theorem5", include_str!("../../data/theorem5.identity")),
    ("theorem6", include_str!("../../data/theorem6.identity")),
    ("theorem7", include_str!("../../data/theorem7.identity")),
    ("theorem8", include_str!("../../data/theorem8.identity")),
    ("theorem9", include_str!("../../data/theorem9.identity")),
    ("theorem10", include_str!("../../data/theorem10.identity")),
    ("theorem11", include_str!("../../data/theorem11.identity")),
    ("r1103", include_str!("../../data/r1103.identity")),
];

pub fn builtin_names() -> impl Iterator<Item = &'static str> {
    BUILTINS.iter().map(|(n, _)| *n)
}

pub fn builtin_text(name: &str) -> Result<&'static str, CatalogError> {
    BUILTINS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .ok_or_else(|| CatalogError::UnknownIdentity(name.to_string()))
}

pub fn builtin_file(name: &str) -> Result<IdentityFile, CatalogError> {
    parse_identity(builtin_text(name)?)
}

pub fn load_builtin(name: &str) -> Result<WZIdentity, CatalogError> {
    Ok(builtin_file(name)?.to_identity())
}
