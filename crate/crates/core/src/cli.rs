//! Command-line front end. Every subcommand runs one suite, appends its
//! records to `<out>/<name>.jsonl`, writes `<out>/<name>.summary.json` and
//! any table it produces, and reports whether every check passed.

use std::fs;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::Rng;
use serde::Serialize;

use crate::deformed::{factorization_check, factorization_classify, osp_relations_check, test_inputs, DeformedContext};
use crate::dunkl::{basic_props_check, DunklContext};
use crate::error::{Error, Result};
use crate::fischer::{
    fischer_components_check, fischer_decompose, harmonic_basis, harmonic_dim, monogenic_basis, monogenic_dim,
    random_span_element, singular_locus, tower_lowering_check,
};
use crate::laguerre::{LaguerreFamily, NormConvention};
use crate::reflection::{Family, RootSystem};
use crate::report::{CheckRecord, Report};
use crate::sampling;
use crate::symalg::{parse_q, DeformParams, RadialExpr, Q};
use crate::transform::{
    a_minus2_suite, fourier_minus2_check, gram_table, kelvin_intertwine_check, kernel_pde_residual,
    orthogonality_check, transform_eigen, transform_eigen_check, DunklTransform, Grid, KernelSpec, TransformGrid,
};

#[derive(Parser, Debug)]
#[command(name = "ddirac", version, about = "Verification suites for the deformed Dunkl-Clifford Dirac operator")]
pub struct Cli {
    /// Directory receiving the reports.
    #[arg(long, env = "DDIRAC_OUT", default_value = "ddirac-reports", global = true)]
    pub out: PathBuf,
    /// Format of tables; reports are always JSON lines.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Seed for any randomly drawn parameters or inputs.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Convention {
    Integrated,
    Half,
}

impl From<Convention> for NormConvention {
    fn from(c: Convention) -> Self {
        match c {
            Convention::Integrated => NormConvention::Integrated,
            Convention::Half => NormConvention::Half,
        }
    }
}

/// Reflection group and multiplicities.
#[derive(Args, Debug, Clone)]
pub struct GroupArgs {
    /// `trivial`, `z2`, `a`, `b`, `i2-4` or `i2-6` (the latter acts on R^3).
    #[arg(long, default_value = "trivial")]
    pub group: String,
    /// Ambient dimension.
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    /// Multiplicities `p/q`, one per orbit or one shared value.
    #[arg(long, value_delimiter = ',', default_value = "0")]
    pub k: Vec<String>,
}

impl GroupArgs {
    pub fn system(&self) -> Result<RootSystem> {
        let ks = self.k.iter().map(|s| parse_q(s)).collect::<Result<Vec<Q>>>()?;
        let family = match self.group.to_ascii_lowercase().as_str() {
            "trivial" => return Ok(RootSystem::trivial(self.m)),
            "z2" => Family::Z2,
            "a" => Family::A,
            "b" => Family::B,
            "i2-2" => Family::I2(2),
            "i2-4" => Family::I2(4),
            "i2-6" => Family::I2(6),
            other => return Err(Error::UnsupportedGroup(format!("unknown group {other:?}"))),
        };
        RootSystem::builtin(family, self.m, &ks)
    }

    fn context(&self) -> Result<Arc<DunklContext>> {
        Ok(Arc::new(DunklContext::new(self.system()?)))
    }
}

/// Deformation parameters as exact rationals; missing ones are drawn from
/// the seed.
#[derive(Args, Debug, Clone)]
pub struct ParamArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    /// Defaults to `2/a - 1` when `a` is given.
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<String>,
}

impl ParamArgs {
    fn params(&self, seed: u64) -> Result<DeformParams> {
        let mut rng = sampling::rng(seed);
        let drawn = sampling::deform_params(&mut rng);
        let a = self.a.as_deref().map(parse_q).transpose()?.unwrap_or(drawn.a.clone());
        let b = self.b.as_deref().map(parse_q).transpose()?.unwrap_or(drawn.b.clone());
        match (&self.a, &self.c) {
            (_, Some(c)) => DeformParams::new(a, b, parse_q(c)?),
            (Some(_), None) => DeformParams::graded(a, b),
            (None, None) => DeformParams::new(a, b, drawn.c),
        }
    }
}

/// Parameters of the graded case `c = 2/a - 1`.
#[derive(Args, Debug, Clone)]
pub struct GradedArgs {
    #[arg(long, default_value = "4", allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub b: String,
}

impl GradedArgs {
    fn params(&self) -> Result<DeformParams> {
        DeformParams::graded(parse_q(&self.a)?, parse_q(&self.b)?)
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// The eight osp(1|2) relations on monomial×blade inputs.
    VerifyOsp {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 3)]
        deg: u32,
    },
    /// Lists the parameter tuples with `Σ D_i² = r^{2-a} Δ_k` and checks each.
    VerifyFactorization {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 3)]
        deg: u32,
    },
    /// Commutativity, product rule, equivariance and Laplacian of the Dunkl operators.
    VerifyBasicprops {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 3)]
        deg: u32,
    },
    /// Kelvin maps P, Q and the intertwining of the components.
    VerifyKelvin {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        params: GradedArgs,
        #[arg(long, default_value_t = 3)]
        deg: u32,
    },
    /// Bases of Dunkl harmonics and monogenics of one degree.
    Basis {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 1)]
        deg: u32,
    },
    /// Fischer decomposition of an input (JSON file) or a random span element.
    Fischer {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 2)]
        deg: u32,
        /// Radial expression in the JSON term format.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Coefficients, lowering constants and norms of the Clifford-Laguerre family.
    LaguerreTable {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 0)]
        ell: u32,
        #[arg(long, default_value_t = 4)]
        t_max: u32,
    },
    /// Gram matrix of the damped Laguerre functions against the norm constants.
    Orthogonality {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 3)]
        t_max: u32,
        #[arg(long, default_value_t = 2)]
        l_max: u32,
        #[arg(long, default_value_t = 40)]
        nr: usize,
        #[arg(long, default_value_t = 256)]
        ntheta: usize,
        #[arg(long, value_enum, default_value_t = Convention::Integrated)]
        convention: Convention,
        #[arg(long, default_value_t = 1e-8)]
        diag_tol: f64,
        #[arg(long, default_value_t = 1e-10)]
        off_tol: f64,
    },
    /// Eigenvalues of the explicit-kernel transform on the Laguerre functions.
    TransformEigen {
        #[command(flatten)]
        params: GradedArgs,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        t_max: u32,
        #[arg(long, default_value_t = 2)]
        l_max: u32,
        /// Radial nodes in `z = r^{a/2}`.
        #[arg(long, default_value_t = TransformGrid::DEFAULT_NZ)]
        nr: usize,
        #[arg(long, default_value_t = 256)]
        ntheta: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Residual of the kernel's first-order system at random points.
    KernelResidual {
        #[command(flatten)]
        params: GradedArgs,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 100)]
        points: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Inversion `I_k` and the `a = -2` operator and transform.
    AMinus2Suite {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 3)]
        deg: u32,
        /// Also compare the integral form of the transform with `I_k F_k I_k`.
        #[arg(long)]
        numeric: bool,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::VerifyOsp { .. } => "verify-osp",
            Command::VerifyFactorization { .. } => "verify-factorization",
            Command::VerifyBasicprops { .. } => "verify-basicprops",
            Command::VerifyKelvin { .. } => "verify-kelvin",
            Command::Basis { .. } => "basis",
            Command::Fischer { .. } => "fischer",
            Command::LaguerreTable { .. } => "laguerre-table",
            Command::Orthogonality { .. } => "orthogonality",
            Command::TransformEigen { .. } => "transform-eigen",
            Command::KernelResidual { .. } => "kernel-residual",
            Command::AMinus2Suite { .. } => "a-minus2-suite",
        }
    }
}

/// Flat rows for CSV output.
trait Tabular {
    fn header() -> Vec<&'static str>;
    fn row(&self) -> Vec<String>;
}

struct Output {
    dir: PathBuf,
    name: &'static str,
    format: Format,
}

impl Output {
    fn report(&self, rep: &Report) -> Result<()> {
        rep.append_jsonl(&self.dir.join(format!("{}.jsonl", self.name)))?;
        let summary = rep.summary();
        fs::write(self.dir.join(format!("{}.summary.json", self.name)), serde_json::to_string_pretty(&summary)?)?;
        println!(
            "{}: {}/{} passed{}",
            self.name,
            summary.passed,
            summary.total,
            if summary.pass { "" } else { " (FAILED)" }
        );
        for f in rep.failures().take(5) {
            println!("  failed: {} on {}", f.relation, f.input);
        }
        Ok(())
    }

    /// Symbolic output, always JSON.
    fn json<T: Serialize>(&self, value: &T) -> Result<()> {
        let path = self.dir.join(format!("{}.table.json", self.name));
        fs::write(&path, serde_json::to_string_pretty(value)?)?;
        println!("wrote {}", path.display());
        Ok(())
    }

    fn table<T: Serialize + Tabular>(&self, rows: &[T]) -> Result<()> {
        match self.format {
            Format::Json => self.json(&rows),
            Format::Csv => {
                let path = self.dir.join(format!("{}.csv", self.name));
                let mut w = csv::Writer::from_path(&path)?;
                w.write_record(T::header())?;
                for r in rows {
                    w.write_record(r.row())?;
                }
                w.flush()?;
                println!("wrote {}", path.display());
                Ok(())
            }
        }
    }
}

#[derive(Serialize)]
struct TupleRow {
    a: String,
    b: String,
    c: String,
    l: String,
}

impl Tabular for TupleRow {
    fn header() -> Vec<&'static str> {
        vec!["a", "b", "c", "l"]
    }
    fn row(&self) -> Vec<String> {
        vec![self.a.clone(), self.b.clone(), self.c.clone(), self.l.clone()]
    }
}

impl Tabular for crate::laguerre::LaguerreRow {
    fn header() -> Vec<&'static str> {
        vec!["t", "l", "coefficients", "lowering_constant", "norm_constant"]
    }
    fn row(&self) -> Vec<String> {
        vec![
            self.t.to_string(),
            self.l.to_string(),
            self.coefficients.join(";"),
            self.lowering_constant.clone(),
            format!("{:e}", self.norm_constant),
        ]
    }
}

impl Tabular for crate::transform::GramEntry {
    fn header() -> Vec<&'static str> {
        vec!["t", "l", "s", "m", "measured_scalar", "expected_scalar", "rel_err"]
    }
    fn row(&self) -> Vec<String> {
        vec![
            self.t.to_string(),
            self.l.to_string(),
            self.s.to_string(),
            self.m.to_string(),
            format!("{:e}", self.measured[0]),
            format!("{:e}", self.expected[0]),
            format!("{:e}", self.rel_err),
        ]
    }
}

impl Tabular for crate::transform::EigenRow {
    fn header() -> Vec<&'static str> {
        vec!["t", "l", "expected_re", "expected_im", "measured_re", "measured_im", "rel_err", "runtime_ms"]
    }
    fn row(&self) -> Vec<String> {
        let [er, ei] = self.expected_eigenvalue;
        let [mr, mi] = self.measured;
        vec![
            self.t.to_string(),
            self.l.to_string(),
            er.to_string(),
            ei.to_string(),
            format!("{mr:e}"),
            format!("{mi:e}"),
            format!("{:e}", self.rel_err),
            format!("{:.3}", self.runtime_ms),
        ]
    }
}

#[derive(Serialize)]
struct BasisTable {
    degree: u32,
    harmonic_dimension: usize,
    harmonics: Vec<Vec<crate::symalg::RadialTermJson>>,
    monogenics: crate::fischer::MonogenicBasisJson,
}

#[derive(Serialize)]
struct FischerRow {
    t: u32,
    j: u32,
    monogenic: Vec<crate::symalg::RadialTermJson>,
    component: Vec<crate::symalg::RadialTermJson>,
}

#[derive(Serialize)]
struct ResidualTable {
    points: usize,
    max_pde_residual: f64,
    max_radial_residual: f64,
}

/// Points with norms in `[1/2, 2]` for kernel residuals.
fn residual_points(m: usize, n: usize, seed: u64) -> Vec<(Vec<f64>, Vec<f64>)> {
    let mut rng = sampling::rng(seed);
    let point = |rng: &mut rand_chacha::ChaCha8Rng| {
        let v: Vec<f64> = (0..m).map(|_| rng.random_range(-1.0..1.0)).collect();
        let len = v.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-3);
        let r = rng.random_range(0.5..2.0);
        v.into_iter().map(|x| r * x / len).collect::<Vec<f64>>()
    };
    (0..n).map(|_| (point(&mut rng), point(&mut rng))).collect()
}

fn check_locus(params: &DeformParams, mu: &Q, levels: u32) -> Result<()> {
    match (0..=levels).find(|&l| singular_locus(params, mu, l)) {
        Some(l) => Err(Error::SingularLocus(format!("gamma_{l}/a is a non-positive integer for these parameters"))),
        None => Ok(()),
    }
}

/// Runs one subcommand. `Ok(true)` iff every check passed.
pub fn run(cli: &Cli) -> Result<bool> {
    fs::create_dir_all(&cli.out)?;
    let out = Output { dir: cli.out.clone(), name: cli.command.name(), format: cli.format };
    let rep = match &cli.command {
        Command::VerifyOsp { group, params, deg } => {
            let ctx = DeformedContext::new(group.context()?, params.params(cli.seed)?);
            let mut rep = Report::new("osp-relations");
            for f in test_inputs(ctx.dim(), *deg, true) {
                rep.extend(osp_relations_check(&ctx, &f));
            }
            rep
        }
        Command::VerifyFactorization { group, deg } => {
            let ctx = group.context()?;
            let system = ctx.system();
            let tuples = factorization_classify(ctx.dim(), &system.mu(), system.is_trivial());
            let inputs = test_inputs(ctx.dim(), *deg, false);
            let mut rep = Report::new("factorization");
            for t in &tuples {
                println!("(a, b, c) = ({}, {}, {})", t.a, t.b, t.c);
                let p = t.params()?;
                rep.extend(factorization_check(&ctx, &p, &inputs));
                let shifted = DeformParams::new(p.a.clone(), &p.b + crate::symalg::q(1, 7), p.c.clone())?;
                let broken = factorization_check(&ctx, &shifted, &inputs);
                rep.push(CheckRecord::flag(
                    "b + 1/7 breaks the factorization",
                    format!("{shifted:?}"),
                    "",
                    !broken.all_passed(),
                ));
            }
            let rows: Vec<TupleRow> = tuples
                .iter()
                .map(|t| TupleRow { a: t.a.to_string(), b: t.b.to_string(), c: t.c.to_string(), l: t.l.to_string() })
                .collect();
            out.table(&rows)?;
            rep
        }
        Command::VerifyBasicprops { group, deg } => {
            let ctx = group.context()?;
            let mut rep = Report::new("dunkl-basic-properties");
            for f in test_inputs(ctx.dim(), *deg, false) {
                rep.extend(basic_props_check(&ctx, &f)?);
            }
            rep
        }
        Command::VerifyKelvin { group, params, deg } => {
            kelvin_intertwine_check(&DeformedContext::new(group.context()?, params.params()?), *deg)?
        }
        Command::Basis { group, deg } => {
            let ctx = group.context()?;
            let harmonics = harmonic_basis(&ctx, *deg);
            let monogenics = monogenic_basis(&ctx, *deg);
            let mut rep = Report::new("basis");
            let input = format!("degree {deg}");
            rep.push(CheckRecord::compare("dim H_l", input.clone(), &harmonics.len(), &harmonic_dim(ctx.dim(), *deg)));
            rep.push(CheckRecord::compare("dim M_l", input, &monogenics.len(), &monogenic_dim(ctx.dim(), *deg)));
            for i in 0..monogenics.len() {
                let m = monogenics.element(i);
                rep.push(CheckRecord::compare(
                    "Dirac_k M = 0",
                    m.to_string(),
                    &ctx.dirac(&m),
                    &RadialExpr::zero(ctx.dim()),
                ));
            }
            out.json(&BasisTable {
                degree: *deg,
                harmonic_dimension: harmonics.len(),
                harmonics: harmonics.iter().map(|h| RadialExpr::from_poly(h).to_json()).collect(),
                monogenics: monogenics.to_json(),
            })?;
            rep
        }
        Command::Fischer { group, params, deg, input } => {
            let dctx = DeformedContext::new(group.context()?, params.params(cli.seed)?);
            check_locus(dctx.params(), &dctx.mu(), *deg)?;
            let f = match input {
                Some(path) => {
                    let terms: Vec<crate::symalg::RadialTermJson> = serde_json::from_str(&fs::read_to_string(path)?)?;
                    RadialExpr::from_json(dctx.dim(), &terms)?
                }
                None => random_span_element(&dctx, *deg, &mut sampling::rng(cli.seed)),
            };
            let comps = fischer_decompose(&dctx, &f, *deg)?;
            let mut rep = fischer_components_check(&dctx, &f, &comps);
            for l in 0..=*deg {
                rep.extend(tower_lowering_check(&dctx, l, *deg - l + 1)?);
            }
            let rows: Vec<FischerRow> = comps
                .iter()
                .map(|c| FischerRow {
                    t: c.t,
                    j: c.j,
                    monogenic: c.monogenic.to_json(),
                    component: c.component.to_json(),
                })
                .collect();
            out.json(&rows)?;
            rep
        }
        Command::LaguerreTable { group, params, ell, t_max } => {
            let dctx = DeformedContext::new(group.context()?, params.params(cli.seed)?);
            check_locus(dctx.params(), &dctx.mu(), *ell)?;
            let basis = monogenic_basis(dctx.dunkl(), *ell);
            if basis.is_empty() {
                return Err(Error::Invalid(format!("no monogenics of degree {ell}")));
            }
            let mut fam = LaguerreFamily::new(dctx, *ell, basis.element(0))?;
            let mut rep = fam.closed_form_check(*t_max)?;
            rep.extend(fam.laguerre_match_check(*t_max));
            rep.extend(fam.lowering_check(*t_max));
            rep.extend(fam.oscillator_check(*t_max));
            let rows: Vec<_> = (0..=*t_max).map(|t| fam.table_row(t)).collect();
            out.table(&rows)?;
            rep
        }
        Command::Orthogonality { group, params, t_max, l_max, nr, ntheta, convention, diag_tol, off_tol } => {
            let dctx = DeformedContext::new(group.context()?, params.params(cli.seed)?);
            check_locus(dctx.params(), &dctx.mu(), *l_max)?;
            let grid = Grid::new(dctx.dunkl().system(), *nr, *ntheta)?;
            let conv = NormConvention::from(*convention);
            out.table(&gram_table(&dctx, &grid, *t_max, *l_max, conv)?)?;
            orthogonality_check(&dctx, &grid, *t_max, *l_max, conv, *diag_tol, *off_tol)?
        }
        Command::TransformEigen { params, m, t_max, l_max, nr, ntheta, tol } => {
            let p = params.params()?;
            let dctx = DeformedContext::new(Arc::new(DunklContext::new(RootSystem::trivial(*m))), p.clone());
            let spec = KernelSpec::new(p, *m)?;
            let grid = TransformGrid::new(&spec, *nr, *ntheta)?;
            let rows = transform_eigen(&dctx, &grid, &spec, *t_max, *l_max, None)?;
            out.table(&rows)?;
            transform_eigen_check(&rows, *tol)
        }
        Command::KernelResidual { params, m, points, tol } => {
            let spec = KernelSpec::new(params.params()?, *m)?;
            let (pde, radial) = kernel_pde_residual(&spec, &residual_points(*m, *points, cli.seed));
            out.json(&ResidualTable { points: *points, max_pde_residual: pde, max_radial_residual: radial })?;
            let mut rep = Report::new("kernel-residual");
            let input = format!("{points} random pairs");
            rep.push(CheckRecord::numeric("kernel first-order system", input.clone(), pde, 0.0, *tol));
            rep.push(CheckRecord::numeric("(r d_r + ab/2) K = -i<x,y>(r_x r_y)^(a/2-1) K", input, radial, 0.0, *tol));
            rep
        }
        Command::AMinus2Suite { group, deg, numeric } => {
            let ctx = group.context()?;
            let mut rep = a_minus2_suite(&ctx, *deg)?;
            if *numeric {
                let tr = DunklTransform::new(ctx.clone(), 40, 96)?;
                for f in test_inputs(ctx.dim(), 2, false) {
                    rep.extend(fourier_minus2_check(&tr, &f, 80, 96, 1e-6)?);
                }
            }
            rep
        }
    };
    out.report(&rep)?;
    Ok(rep.all_passed())
}
