//! Named verification suites with their default parameters.

use dyshift_core::cartan::{build_cartan_str, CartanDatum};
use dyshift_core::completion::run_appendix_all;
use dyshift_core::dist::check_rules_against_oracle;
use dyshift_core::freealg::Family;
use dyshift_core::liealg::{build_simple, check_uce_jacobi, verify_t_relations_in_uce};
use dyshift_core::limitphi::{check_kernel_suite, gr_check};
use dyshift_core::morphisms::verify_ti_identities;
use dyshift_core::phi::{
    check_gr_tw, check_j_generators, check_phi_form, check_phi_gamma_identity, check_phi_relations, check_phi_serre,
    check_phi_xxh, check_vertex_consistency,
};
use dyshift_core::report::Report;
use dyshift_core::scalar::Q;
use dyshift_core::{Error, Result};

pub const SUITES: [&str; 14] = [
    "phi.relations",
    "phi.xxh",
    "phi.serre",
    "phi.form",
    "phi.gamma",
    "phi.grtw",
    "phi.jgen",
    "morph.ti",
    "mry.relations",
    "uce.jacobi",
    "limit.kernel",
    "limit.grcheck",
    "appendix.all",
    "dist.oracle",
];

const AFFINE_SUITES: [&str; 2] = ["mry.relations", "limit.kernel"];

#[derive(Clone, Debug, Default)]
pub struct SuiteOpts {
    pub ty: Option<String>,
    pub affine: bool,
    pub bound: Option<i64>,
    pub trunc: Option<i64>,
    pub window: Option<(i64, i64)>,
    pub seed: u64,
    pub c: Option<Q>,
}

impl SuiteOpts {
    pub fn datum(&self, default: &str) -> Result<CartanDatum> {
        let mut label = self.ty.clone().unwrap_or_else(|| default.to_string());
        if self.affine && !label.ends_with('~') {
            label.push('~');
        }
        build_cartan_str(&label)
    }

    fn bound(&self) -> i64 {
        self.bound.unwrap_or(4)
    }

    fn trunc(&self) -> i64 {
        self.trunc.unwrap_or(8)
    }

    fn nonneg(&self, v: i64, what: &str) -> Result<u32> {
        u32::try_from(v).map_err(|_| Error::Malformed(format!("{} must be nonnegative", what)))
    }
}

#[derive(Debug)]
pub enum SuiteError {
    Unknown(String),
    Core(Error),
}

impl From<Error> for SuiteError {
    fn from(e: Error) -> Self {
        SuiteError::Core(e)
    }
}

impl std::fmt::Display for SuiteError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SuiteError::Unknown(s) => write!(f, "unknown suite `{}` (known: {})", s, SUITES.join(", ")),
            SuiteError::Core(e) => write!(f, "{}", e),
        }
    }
}

pub fn default_type(name: &str) -> &'static str {
    if AFFINE_SUITES.contains(&name) {
        "A2~"
    } else {
        "A2"
    }
}

pub fn run_suite(name: &str, o: &SuiteOpts) -> std::result::Result<Report, SuiteError> {
    if !SUITES.contains(&name) {
        return Err(SuiteError::Unknown(name.into()));
    }
    let dat = o.datum(default_type(name))?;
    let n = o.bound();
    let m = o.trunc();
    let rep = match name {
        "phi.relations" => {
            let n = o.nonneg(n, "bound")?;
            let mut rep = Report::new(dat.label());
            for fam in [Family::Hh, Family::H0x, Family::Xh, Family::Xx] {
                rep.extend(check_phi_relations(&dat, fam, n)?);
            }
            rep
        }
        "phi.xxh" => check_phi_xxh(&dat, o.nonneg(n, "bound")?)?,
        "phi.serre" => check_phi_serre(&dat, o.nonneg(n, "bound")?)?,
        "phi.form" => {
            let mut rep = check_vertex_consistency(&dat, o.nonneg(n, "bound")?, m)?;
            rep.extend(check_phi_form(&dat, o.nonneg(n, "bound")?, m)?);
            rep
        }
        "phi.gamma" => check_phi_gamma_identity(&dat)?,
        "phi.grtw" => {
            let q = |a: i64| Q::from_integer(a.into());
            let pairs = match &o.c {
                Some(c) => vec![(Q::from_integer(1.into()), c.clone())],
                None => vec![(q(1), q(2)), (q(2), q(3)), (q(-1), q(1))],
            };
            check_gr_tw(&dat, &pairs, n, m)?
        }
        "phi.jgen" => check_j_generators(&dat, n, m)?,
        "morph.ti" => verify_ti_identities(&dat, n)?,
        "mry.relations" => verify_t_relations_in_uce(&dat, n)?,
        "uce.jacobi" => {
            let g = build_simple(dat.ty.finite_part())?;
            check_uce_jacobi(&g, 100, o.seed)?
        }
        "limit.kernel" => {
            let (r, s) = o.window.unwrap_or((4, 4));
            // the window needs M ≥ 2S + 2 to separate (1+t)^s and log(1+t)
            let m = o.trunc.unwrap_or((2 * s + 2).max(8));
            check_kernel_suite(&dat, r, s, o.nonneg(m, "trunc")?, n)?
        }
        "limit.grcheck" => {
            let g = build_simple(dat.ty.finite_part())?;
            let c = o.c.clone().unwrap_or_else(|| Q::from_integer(1.into()));
            gr_check(&g, &c, o.nonneg(n, "bound")?, o.nonneg(m, "trunc")?, 3)?
        }
        "appendix.all" => run_appendix_all(o.nonneg(n, "bound")?, 100, o.seed)?,
        "dist.oracle" => {
            let radius = o.window.map_or(10, |w| w.0);
            check_rules_against_oracle(o.nonneg(n, "bound")?, radius)
        }
        _ => unreachable!(),
    };
    Ok(rep)
}
