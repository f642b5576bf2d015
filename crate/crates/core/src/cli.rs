//! Command-line front end: function catalog, global settings and the
//! transform | translate | convolve | heat | verify subcommands.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::function::{RadialFunction, SampledRadialFunction};
use crate::heat;
use crate::quadrature::QuadratureSpec;
use crate::sl2::SLMatrix;
use crate::specfun::Order;
use crate::transform;
use crate::translation;
use crate::verify::{self, VerifyOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctionKind {
    Gaussian,
    ChirpedGaussian,
    Bump,
    Box,
    DampedCosine,
}

impl FunctionKind {
    const ALL: [FunctionKind; 5] = [
        FunctionKind::Gaussian,
        FunctionKind::ChirpedGaussian,
        FunctionKind::Bump,
        FunctionKind::Box,
        FunctionKind::DampedCosine,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FunctionKind::Gaussian => "gaussian",
            FunctionKind::ChirpedGaussian => "chirped_gaussian",
            FunctionKind::Bump => "bump",
            FunctionKind::Box => "box",
            FunctionKind::DampedCosine => "damped_cosine",
        }
    }

    /// Parameter names the shape takes, all required.
    pub fn keys(self) -> &'static [&'static str] {
        match self {
            FunctionKind::Gaussian => &["beta"],
            FunctionKind::ChirpedGaussian => &["beta", "chirp"],
            FunctionKind::Bump | FunctionKind::Box => &["R"],
            FunctionKind::DampedCosine => &["omega"],
        }
    }
}

/// A catalog function with its parameters, e.g. `chirped_gaussian:beta=0.5,chirp=-1`.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionSpec {
    pub kind: FunctionKind,
    pub params: BTreeMap<String, f64>,
}

impl FunctionSpec {
    fn param(&self, key: &str) -> f64 {
        self.params[key]
    }

    pub fn build(&self) -> Result<RadialFunction> {
        match self.kind {
            FunctionKind::Gaussian => RadialFunction::gaussian(self.param("beta")),
            FunctionKind::ChirpedGaussian => RadialFunction::chirped_gaussian(self.param("beta"), self.param("chirp")),
            FunctionKind::Bump => RadialFunction::bump(self.param("R")),
            FunctionKind::Box => RadialFunction::boxcar(self.param("R")),
            FunctionKind::DampedCosine => RadialFunction::damped_cosine(self.param("omega")),
        }
    }
}

impl fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.kind.name())?;
        let parts: Vec<String> = self.kind.keys().iter().map(|k| format!("{k}={}", self.params[*k])).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for FunctionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_function(s)
    }
}

fn parse_error(position: usize, message: impl Into<String>) -> Error {
    Error::Parse { position, message: message.into() }
}

/// Parses `name:key=value,...`. Positions in errors are byte offsets into `text`.
pub fn parse_function(text: &str) -> Result<FunctionSpec> {
    let (name, rest, rest_at) = match text.find(':') {
        Some(i) => (&text[..i], &text[i + 1..], i + 1),
        None => (text, "", text.len()),
    };
    let kind = FunctionKind::ALL
        .into_iter()
        .find(|k| k.name() == name.trim())
        .ok_or_else(|| parse_error(0, format!("unknown function {:?}", name.trim())))?;

    let mut params = BTreeMap::new();
    let mut offset = rest_at;
    for item in rest.split(',') {
        let at = offset;
        offset += item.len() + 1;
        if item.trim().is_empty() {
            if rest.is_empty() {
                break;
            }
            return Err(parse_error(at, "empty parameter"));
        }
        let eq = item.find('=').ok_or_else(|| parse_error(at, format!("expected key=value, got {item:?}")))?;
        let key = item[..eq].trim();
        if !kind.keys().contains(&key) {
            return Err(parse_error(at, format!("{} takes no parameter {key:?}", kind.name())));
        }
        let raw = item[eq + 1..].trim();
        let value: f64 = raw.parse().map_err(|_| parse_error(at + eq + 1, format!("not a number: {raw:?}")))?;
        if params.insert(key.to_string(), value).is_some() {
            return Err(parse_error(at, format!("parameter {key:?} given twice")));
        }
    }
    for key in kind.keys() {
        let Some(&value) = params.get(*key) else {
            return Err(Error::Validation(format!("{} needs parameter {key}", kind.name())));
        };
        let ok = match *key {
            "chirp" => value.is_finite(),
            "omega" => value.is_finite() && value >= 0.0,
            _ => value.is_finite() && value > 0.0,
        };
        if !ok {
            return Err(Error::Validation(format!("{key} = {value} is out of range for {}", kind.name())));
        }
    }
    Ok(FunctionSpec { kind, params })
}

/// `lo:hi:n`, n ≥ 1 evenly spaced points (just `lo` when n = 1).
pub fn parse_points(text: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(parse_error(0, format!("expected lo:hi:n, got {text:?}")));
    }
    let mut at = 0;
    let mut fields = Vec::with_capacity(3);
    for part in &parts {
        fields.push((at, part.trim()));
        at += part.len() + 1;
    }
    let number = |(at, s): (usize, &str)| s.parse::<f64>().map_err(|_| parse_error(at, format!("not a number: {s:?}")));
    let lo = number(fields[0])?;
    let hi = number(fields[1])?;
    let n: usize = fields[2].1.parse().map_err(|_| parse_error(fields[2].0, format!("not a count: {:?}", fields[2].1)))?;
    if n == 0 || !(lo.is_finite() && hi.is_finite()) || lo < 0.0 || hi < lo || (n > 1 && hi == lo) {
        return Err(Error::Validation(format!("need 0 <= lo < hi and n >= 1, got {text:?}")));
    }
    if n == 1 {
        return Ok(vec![lo]);
    }
    Ok((0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect())
}

/// `a,b,c,d`.
pub fn parse_matrix(text: &str) -> Result<SLMatrix> {
    let mut values = Vec::with_capacity(4);
    let mut at = 0;
    for part in text.split(',') {
        let s = part.trim();
        values.push(s.parse::<f64>().map_err(|_| parse_error(at, format!("not a number: {s:?}")))?);
        at += part.len() + 1;
    }
    let [a, b, c, d] = values[..] else {
        return Err(parse_error(0, format!("expected four entries a,b,c,d, got {}", values.len())));
    };
    SLMatrix::new(a, b, c, d)
}

/// CSV with header `x,re,im` and 17 significant digits per value.
pub fn write_csv(out: &mut dyn Write, samples: &SampledRadialFunction) -> io::Result<()> {
    writeln!(out, "x,re,im")?;
    for (x, v) in samples.iter() {
        writeln!(out, "{x:.16e},{:.16e},{:.16e}", v.re, v.im)?;
    }
    Ok(())
}

#[derive(Debug, Parser)]
#[command(name = "cfbt", version, about = "Canonical Fourier-Bessel transform, translation, convolution and heat flow")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Default, Args)]
pub struct GlobalArgs {
    /// Parameter matrix a,b,c,d with ad - bc = 1 and b != 0 [default: 0,1,-1,0]
    #[arg(long, global = true, allow_hyphen_values = true, conflicts_with = "rotation")]
    pub matrix: Option<String>,
    /// Rotation angle phi, giving the matrix (cos, sin; -sin, cos)
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub rotation: Option<f64>,
    /// Bessel order nu > -1/2 [default: 0]
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub nu: Option<f64>,
    /// Relative quadrature tolerance [default: 1e-10]
    #[arg(long, global = true)]
    pub rel_tol: Option<f64>,
    /// Absolute quadrature tolerance [default: 1e-12]
    #[arg(long, global = true)]
    pub abs_tol: Option<f64>,
    /// Panel budget of each adaptive integral [default: 4000]
    #[arg(long, global = true)]
    pub max_panels: Option<usize>,
    /// Seed for the randomized checks [default: 0]
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output path [default: stdout]
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// File of `key = value` lines using the long flag names; flags win
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample F^m f (or the inverse transform) on a grid
    Transform {
        #[arg(long)]
        function: String,
        #[arg(long)]
        points: String,
        /// Apply F^{m^-1} instead
        #[arg(long)]
        inverse: bool,
    },
    /// Sample y -> T_x^{nu,m} f(y)
    Translate {
        #[arg(long)]
        function: String,
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        #[arg(long)]
        points: String,
    },
    /// Sample f *_{nu,m} g
    Convolve {
        #[arg(long)]
        function: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        points: String,
    },
    /// Solve the heat equation for the operator of m^-1 from initial datum f
    Heat {
        #[arg(long)]
        function: String,
        #[arg(long)]
        sigma: f64,
        #[arg(long, required_unless_present = "snapshots")]
        t: Option<f64>,
        /// Comma-separated times; one CSV per time
        #[arg(long, value_delimiter = ',', conflicts_with = "t")]
        snapshots: Vec<f64>,
        #[arg(long)]
        points: String,
    },
    /// Run the property suite and print a JSON report
    Verify {
        /// Check id to run (repeatable); all checks when absent
        #[arg(long = "check", value_delimiter = ',')]
        checks: Vec<String>,
        /// List the registered check ids and exit
        #[arg(long)]
        list: bool,
    },
}

/// Global flags merged with the config file and defaults.
#[derive(Debug, Clone)]
pub struct Settings {
    pub matrix: SLMatrix,
    pub nu: Order,
    pub spec: QuadratureSpec,
    pub seed: u64,
    pub out: Option<PathBuf>,
}

/// Reads `key = value` lines; `#` starts a comment. Keys are the long flag
/// names, with `_` accepted for `-`.
pub fn read_config(text: &str) -> Result<BTreeMap<String, String>> {
    const KEYS: [&str; 8] = ["matrix", "rotation", "nu", "rel-tol", "abs-tol", "max-panels", "seed", "out"];
    let mut map = BTreeMap::new();
    let mut offset = 0;
    for line in text.lines() {
        let at = offset;
        offset += line.len() + 1;
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) =
            content.split_once('=').ok_or_else(|| parse_error(at, format!("expected key = value, got {content:?}")))?;
        let key = key.trim().replace('_', "-");
        if !KEYS.contains(&key.as_str()) {
            return Err(parse_error(at, format!("unknown config key {key:?}")));
        }
        map.insert(key, value.trim().to_string());
    }
    Ok(map)
}

impl GlobalArgs {
    pub fn resolve(&self) -> Result<Settings> {
        let file = match &self.config {
            Some(path) => read_config(&fs::read_to_string(path)?)?,
            None => BTreeMap::new(),
        };
        let from_file = |key: &str| -> Result<Option<f64>> {
            file.get(key)
                .map(|v| v.parse::<f64>().map_err(|_| Error::Validation(format!("config {key} = {v:?} is not a number"))))
                .transpose()
        };

        let matrix = match (&self.matrix, self.rotation) {
            (Some(text), _) => parse_matrix(text)?,
            (None, Some(phi)) => SLMatrix::rotation(phi)?,
            (None, None) => match (file.get("matrix"), from_file("rotation")?) {
                (Some(text), _) => parse_matrix(text)?,
                (None, Some(phi)) => SLMatrix::rotation(phi)?,
                (None, None) => SLMatrix::hankel(),
            },
        };
        let nu = Order::new(self.nu.or(from_file("nu")?).unwrap_or(0.0))?;
        let defaults = QuadratureSpec::default();
        let max_panels = match self.max_panels {
            Some(n) => n,
            None => match file.get("max-panels") {
                Some(v) => v.parse().map_err(|_| Error::Validation(format!("config max-panels = {v:?} is not a count")))?,
                None => defaults.max_panels,
            },
        };
        let spec = QuadratureSpec::new(
            self.rel_tol.or(from_file("rel-tol")?).unwrap_or(defaults.rel_tol),
            self.abs_tol.or(from_file("abs-tol")?).unwrap_or(defaults.abs_tol),
            max_panels,
            defaults.default_truncation,
        )?;
        let seed = match self.seed {
            Some(s) => s,
            None => match file.get("seed") {
                Some(v) => v.parse().map_err(|_| Error::Validation(format!("config seed = {v:?} is not an integer")))?,
                None => 0,
            },
        };
        let out = self.out.clone().or_else(|| file.get("out").map(PathBuf::from));
        Ok(Settings { matrix, nu, spec, seed, out })
    }
}

fn open_out(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(io::BufWriter::new(fs::File::create(p)?)),
        None => Box::new(io::BufWriter::new(io::stdout().lock())),
    })
}

/// `u.csv` with tag `t0.5` becomes `u_t0.5.csv`.
fn tagged_path(path: &Path, tag: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}_{tag}.{}", ext.to_string_lossy()),
        None => format!("{stem}_{tag}"),
    };
    path.with_file_name(name)
}

/// Runs a parsed command line. `Ok(false)` means the command ran but reported
/// failure (a verify check did not pass).
pub fn run(cli: &Cli) -> Result<bool> {
    let settings = cli.global.resolve()?;
    let Settings { matrix: m, nu, spec, .. } = settings;
    let write_samples = |samples: &SampledRadialFunction| -> Result<()> {
        let mut out = open_out(settings.out.as_deref())?;
        write_csv(&mut out, samples)?;
        out.flush()?;
        Ok(())
    };
    match &cli.command {
        Command::Transform { function, points, inverse } => {
            let f = parse_function(function)?.build()?;
            let points = parse_points(points)?;
            let samples = if *inverse {
                transform::inverse(&f, &m, nu, &points, &spec)?
            } else {
                transform::forward(&f, &m, nu, &points, &spec)?
            };
            write_samples(&samples)?;
        }
        Command::Translate { function, x, points } => {
            let f = parse_function(function)?.build()?;
            let points = parse_points(points)?;
            let values = points.iter().map(|&y| translation::translate(&m, nu, &f, *x, y, &spec)).collect::<Result<Vec<_>>>()?;
            write_samples(&SampledRadialFunction::new(points, values)?)?;
        }
        Command::Convolve { function, g, points } => {
            let f = parse_function(function)?.build()?;
            let g = parse_function(g)?.build()?;
            let points = parse_points(points)?;
            write_samples(&translation::convolve(&m, nu, &f, &g, &points, &spec)?)?;
        }
        Command::Heat { function, sigma, t, snapshots, points } => {
            let f = parse_function(function)?.build()?;
            let points = parse_points(points)?;
            let times: Vec<f64> = match t {
                Some(t) => vec![*t],
                None => snapshots.clone(),
            };
            let single = times.len() == 1;
            let mut stdout = (settings.out.is_none() && !single).then(|| open_out(None)).transpose()?;
            for (i, &time) in times.iter().enumerate() {
                let u = heat::evolve(&m, nu, *sigma, &f, time, &points, &spec)?;
                match (&settings.out, &mut stdout) {
                    (Some(path), _) if !single => {
                        let mut out = open_out(Some(&tagged_path(path, &format!("t{time}"))))?;
                        write_csv(&mut out, &u)?;
                        out.flush()?;
                    }
                    (None, Some(out)) => {
                        if i > 0 {
                            writeln!(out)?;
                        }
                        writeln!(out, "# t = {time}")?;
                        write_csv(out, &u)?;
                    }
                    _ => write_samples(&u)?,
                }
            }
            if let Some(out) = &mut stdout {
                out.flush()?;
            }
        }
        Command::Verify { checks, list } => {
            let mut out = open_out(settings.out.as_deref())?;
            if *list {
                for id in verify::check_ids() {
                    writeln!(out, "{id}")?;
                }
                out.flush()?;
                return Ok(true);
            }
            let options = VerifyOptions {
                selection: (!checks.is_empty()).then(|| checks.clone()),
                seed: settings.seed,
                spec,
                ..VerifyOptions::default()
            };
            let report = verify::run_verify_with(&options)?;
            writeln!(out, "{}", report.to_json())?;
            out.flush()?;
            return Ok(report.all_pass());
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn function_examples() {
        let g = parse_function("gaussian:beta=1").unwrap();
        assert_eq!(g.kind, FunctionKind::Gaussian);
        assert_eq!(g.params["beta"], 1.0);
        let b = parse_function("box:R=1").unwrap();
        assert_eq!(b.kind, FunctionKind::Box);
        let f = b.build().unwrap();
        assert_eq!(f.eval(0.5).re, 1.0);
        assert_eq!(f.eval(1.5).re, 0.0);
        assert!(matches!(parse_function("gaussian:beta=-1"), Err(Error::Validation(_))));
    }

    #[test]
    fn parse_errors_carry_positions() {
        assert_eq!(
            parse_function("gaussian:beta=x").unwrap_err(),
            Error::Parse { position: 14, message: "not a number: \"x\"".into() }
        );
        assert!(matches!(parse_function("gaussian:beta=1,gamma=2"), Err(Error::Parse { position: 16, .. })));
        assert!(matches!(parse_function("cauchy:beta=1"), Err(Error::Parse { position: 0, .. })));
        assert!(matches!(parse_function("bump:R=1,R=2"), Err(Error::Parse { position: 9, .. })));
        assert!(matches!(parse_function("bump"), Err(Error::Validation(_))));
    }

    #[test]
    fn display_round_trips() {
        let spec = parse_function("chirped_gaussian:chirp=-0.25,beta=0.5").unwrap();
        assert_eq!(spec.to_string(), "chirped_gaussian:beta=0.5,chirp=-0.25");
        assert_eq!(spec.to_string().parse::<FunctionSpec>().unwrap(), spec);
    }

    #[test]
    fn points_and_matrix() {
        assert_eq!(parse_points("0:1:3").unwrap(), vec![0.0, 0.5, 1.0]);
        assert_eq!(parse_points("2:2:1").unwrap(), vec![2.0]);
        assert!(matches!(parse_points("0:1"), Err(Error::Parse { .. })));
        assert!(matches!(parse_points("0:a:3"), Err(Error::Parse { position: 2, .. })));
        assert!(matches!(parse_points("1:0:3"), Err(Error::Validation(_))));
        assert_eq!(parse_matrix("0,1,-1,0").unwrap(), SLMatrix::hankel());
        assert!(parse_matrix("1,1,1,1").is_err());
        assert!(matches!(parse_matrix("1,2,3"), Err(Error::Parse { .. })));
    }

    #[test]
    fn csv_is_lossless() {
        let x = 0.1 + 0.2;
        let s = SampledRadialFunction::new(vec![x], vec![num_complex::Complex64::new(1.0 / 3.0, -2e-300)]).unwrap();
        let mut buf = Vec::new();
        write_csv(&mut buf, &s).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let row: Vec<f64> = text.lines().nth(1).unwrap().split(',').map(|v| v.parse().unwrap()).collect();
        assert_eq!(row, vec![x, 1.0 / 3.0, -2e-300]);
    }

    #[test]
    fn flags_override_config() {
        let dir = std::env::temp_dir().join(format!("cfbt-config-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.conf");
        fs::write(&path, "# settings\nnu = 1.5\nrel_tol = 1e-6\nrotation = 0.5\nseed = 9\n").unwrap();
        let cli = Cli::parse_from(["cfbt", "--config", path.to_str().unwrap(), "--nu", "0.25", "verify"]);
        let s = cli.global.resolve().unwrap();
        assert_eq!(s.nu.nu(), 0.25);
        assert_eq!(s.spec.rel_tol, 1e-6);
        assert_eq!(s.seed, 9);
        assert_eq!(s.matrix, SLMatrix::rotation(0.5).unwrap());
        assert!(matches!(read_config("speed = 3"), Err(Error::Parse { position: 0, .. })));
        fs::remove_dir_all(dir).unwrap();
    }

    #[test]
    fn snapshot_paths() {
        assert_eq!(tagged_path(Path::new("out/u.csv"), "t0.5"), PathBuf::from("out/u_t0.5.csv"));
        assert_eq!(tagged_path(Path::new("u"), "t2"), PathBuf::from("u_t2"));
    }
}
