use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use spikecam::analysis::{
    isi_histogram, spikes_per_frame, spikes_per_sampling, tfi_reconstruct, tfp_reconstruct, Image,
};
use spikecam::calibration::{calibrate_sensor, CalibrationScene, Priors, ThresholdSplit};
use spikecam::io::{
    parse_manifest, read_luminance, read_maps, read_params, read_spikes_with, write_luminance, write_maps,
    write_params, write_spikes, BitOrder,
};
use spikecam::scenegen::{random_texture, translating_scene, uniform_scene, Border};
use spikecam::sensor::{sample_spatial_maps, simulate_ideal, simulate_noisy, with_workers};
use spikecam::{Error, NoiseParams, SensorConfig, SpikeStream};

const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;
const EXIT_NUMERIC: u8 = 4;

#[derive(Parser)]
#[command(name = "spikecam", version, about = "Spike-camera simulation and noise calibration")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a luminance sequence
    #[command(subcommand)]
    Scene(SceneCommand),
    /// Convert a luminance sequence into a spike stream
    Simulate(SimulateArgs),
    /// Estimate noise parameters from spike streams over static scenes
    Calibrate(CalibrateArgs),
    /// Compute statistics and reconstructions of a spike stream
    Analyze(AnalyzeArgs),
}

#[derive(Args)]
struct Geometry {
    /// Parameter file supplying geometry and readout interval
    #[arg(long)]
    params: Option<PathBuf>,
    #[arg(long)]
    height: Option<usize>,
    #[arg(long)]
    width: Option<usize>,
}

#[derive(Subcommand)]
enum SceneCommand {
    /// Static scene of luminance gray * l_monitor
    Uniform {
        #[arg(long)]
        gray: f64,
        #[arg(long, default_value_t = 1.0)]
        l_monitor: f64,
        #[arg(long)]
        frames: usize,
        #[command(flatten)]
        geometry: Geometry,
        #[arg(long)]
        out: PathBuf,
    },
    /// Random texture translating at constant velocity
    Translate {
        #[arg(long)]
        seed: u64,
        #[arg(long, allow_negative_numbers = true)]
        vx: f64,
        #[arg(long, allow_negative_numbers = true)]
        vy: f64,
        #[arg(long)]
        frames: usize,
        #[arg(long, default_value_t = 0.0)]
        min: f32,
        #[arg(long, default_value_t = 2.0)]
        max: f32,
        #[arg(long, value_enum, default_value_t = BorderArg::Wrap)]
        border: BorderArg,
        #[command(flatten)]
        geometry: Geometry,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BorderArg {
    Wrap,
    Clamp,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Mode {
    Ideal,
    Noisy,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    lum: PathBuf,
    #[arg(long)]
    params: Option<PathBuf>,
    /// Required in noisy mode
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = Mode::Noisy)]
    mode: Mode,
    /// Use these fixed-pattern maps instead of sampling them from the seed
    #[arg(long)]
    maps: Option<PathBuf>,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum SplitArg {
    Capacitance,
    Voltage,
}

#[derive(Args)]
struct CalibrateArgs {
    /// Lines of `gray l_monitor stream-path`
    #[arg(long)]
    manifest: PathBuf,
    /// Parameter file supplying the circuit constants
    #[arg(long)]
    params: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
    /// Write per-pixel estimates
    #[arg(long)]
    maps: Option<PathBuf>,
    /// Write the estimated parameters as a parameter file
    #[arg(long)]
    params_out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = SplitArg::Capacitance)]
    split: SplitArg,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Write the pooled ISI histogram
    #[arg(long)]
    isi: bool,
    /// Write spike-count statistics
    #[arg(long)]
    counts: bool,
    /// Write a TFP reconstruction with this window
    #[arg(long, num_args = 0..=1, default_missing_value = "32")]
    tfp: Option<usize>,
    /// Centre frame of the TFP window (default: middle of the stream)
    #[arg(long)]
    tfp_center: Option<usize>,
    /// Write a TFI reconstruction
    #[arg(long)]
    tfi: bool,
    /// Frame of the TFI reconstruction (default: middle of the stream)
    #[arg(long)]
    tfi_at: Option<usize>,
    /// Input is packed most-significant bit first
    #[arg(long)]
    msb_first: bool,
    #[arg(long)]
    out: PathBuf,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Io(_) | Error::Format(_) | Error::Parse { .. } | Error::Invariant { .. } | Error::Shape(_) => {
                EXIT_IO
            }
            _ => EXIT_NUMERIC,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

type CliResult<T = ()> = Result<T, Failure>;

fn with_path(path: &Path) -> impl Fn(Error) -> Failure + '_ {
    move |e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    }
}

fn load_params(path: Option<&Path>) -> CliResult<(SensorConfig, NoiseParams)> {
    match path {
        Some(p) => read_params(p).map_err(with_path(p)),
        None => Ok((SensorConfig::default(), NoiseParams::default())),
    }
}

fn geometry(g: &Geometry) -> CliResult<SensorConfig> {
    let (mut cfg, _) = load_params(g.params.as_deref())?;
    if let Some(h) = g.height {
        cfg.height = h;
    }
    if let Some(w) = g.width {
        cfg.width = w;
    }
    if cfg.height == 0 || cfg.width == 0 {
        return Err(Failure::usage("height and width must be at least 1"));
    }
    Ok(cfg)
}

fn cmd_scene(cmd: SceneCommand) -> CliResult {
    match cmd {
        SceneCommand::Uniform {
            gray,
            l_monitor,
            frames,
            geometry: g,
            out,
        } => {
            if !(gray >= 0.0 && gray.is_finite()) {
                return Err(Failure::usage(format!("--gray must be >= 0, got {gray}")));
            }
            if !(l_monitor > 0.0 && l_monitor.is_finite()) {
                return Err(Failure::usage(format!("--l-monitor must be > 0, got {l_monitor}")));
            }
            if frames == 0 {
                return Err(Failure::usage("--frames must be at least 1"));
            }
            let cfg = geometry(&g)?;
            let seq = uniform_scene(gray, l_monitor, frames, &cfg)?;
            write_luminance(&seq, &out).map_err(with_path(&out))?;
            println!(
                "wrote {}: {}x{}, {} frames, luminance {}",
                out.display(),
                cfg.height,
                cfg.width,
                frames,
                gray * l_monitor
            );
        }
        SceneCommand::Translate {
            seed,
            vx,
            vy,
            frames,
            min,
            max,
            border,
            geometry: g,
            out,
        } => {
            if !vx.is_finite() || !vy.is_finite() {
                return Err(Failure::usage("--vx and --vy must be finite"));
            }
            if frames == 0 {
                return Err(Failure::usage("--frames must be at least 1"));
            }
            if !(min >= 0.0 && max >= min && max.is_finite()) {
                return Err(Failure::usage(format!("need 0 <= --min <= --max, got {min} and {max}")));
            }
            let cfg = geometry(&g)?;
            let tex = random_texture(seed, cfg.height, cfg.width, (min, max))?;
            let border = match border {
                BorderArg::Wrap => Border::Wrap,
                BorderArg::Clamp => Border::Clamp,
            };
            let seq = translating_scene(&tex, (vx, vy), frames, border, cfg.dt_us as f32)?;
            write_luminance(&seq, &out).map_err(with_path(&out))?;
            println!(
                "wrote {}: {}x{}, {} frames, velocity ({vx}, {vy}) px/frame, with flow labels",
                out.display(),
                cfg.height,
                cfg.width,
                frames
            );
        }
    }
    Ok(())
}

fn cmd_simulate(args: SimulateArgs) -> CliResult {
    let (mut cfg, np) = load_params(args.params.as_deref())?;
    let lum = read_luminance(&args.lum).map_err(with_path(&args.lum))?;
    if args.params.is_none() {
        cfg.height = lum.height();
        cfg.width = lum.width();
        cfg.dt_us = lum.dt_us() as f64;
    }
    let workers = match args.workers {
        Some(0) => return Err(Failure::usage("--workers must be at least 1")),
        Some(w) => w,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };

    let (stream, clamps) = match args.mode {
        Mode::Ideal => {
            let s = with_workers(workers, || simulate_ideal(&lum, &cfg, np.mu_alpha))??;
            (s, None)
        }
        Mode::Noisy => {
            let seed = args
                .seed
                .ok_or_else(|| Failure::usage("--seed is required for noisy simulation"))?;
            let maps = match &args.maps {
                Some(p) => read_maps(p).map_err(with_path(p))?,
                None => sample_spatial_maps(&cfg, &np, seed)?,
            };
            let run = with_workers(workers, || simulate_noisy(&lum, &cfg, &np, &maps, seed))??;
            (run.stream, Some(run.floor_clamps))
        }
    };
    write_spikes(&stream, &args.out).map_err(with_path(&args.out))?;
    print_summary(&stream, clamps)?;
    Ok(())
}

fn print_summary(stream: &SpikeStream, clamps: Option<u64>) -> CliResult {
    println!("frames = {}", stream.n_frames());
    println!("pixels = {}", stream.pixels());
    println!("total_spikes = {}", stream.total_spikes());
    if stream.n_frames() > 0 {
        println!("mean_spikes_per_frame = {}", spikes_per_sampling(stream)?);
    }
    if let Some(c) = clamps {
        println!("threshold_floor_clamps = {c}");
    }
    Ok(())
}

fn cmd_calibrate(args: CalibrateArgs) -> CliResult {
    let text = fs::read_to_string(&args.manifest).map_err(|e| with_path(&args.manifest)(e.into()))?;
    let entries = parse_manifest(&text).map_err(with_path(&args.manifest))?;
    if entries.len() < 2 {
        return Err(Failure {
            code: EXIT_NUMERIC,
            message: format!("calibration needs at least 2 scenes, manifest lists {}", entries.len()),
        });
    }
    let (mut cfg, _) = load_params(args.params.as_deref())?;
    let mut scenes = Vec::with_capacity(entries.len());
    for e in entries {
        let stream = read_spikes_with(&e.path, BitOrder::LsbFirst).map_err(with_path(&e.path))?;
        scenes.push(CalibrationScene {
            gray: e.gray,
            l_monitor: e.l_monitor,
            stream,
        });
    }
    cfg.height = scenes[0].stream.height();
    cfg.width = scenes[0].stream.width();
    let priors = Priors {
        split: match args.split {
            SplitArg::Capacitance => ThresholdSplit::Capacitance,
            SplitArg::Voltage => ThresholdSplit::Voltage,
        },
        ..Priors::default()
    };
    let cal = calibrate_sensor(&scenes, &cfg, &priors)?;
    fs::write(&args.out, cal.report.to_text(cal.params.as_ref())).map_err(|e| with_path(&args.out)(e.into()))?;
    if let Some(p) = &args.maps {
        match &cal.maps {
            Some(m) => write_maps(m, p).map_err(with_path(p))?,
            None => eprintln!("warning: no live pixels, {} not written", p.display()),
        }
    }
    if let Some(p) = &args.params_out {
        match &cal.params {
            Some(np) => write_params(&cfg, np, p).map_err(with_path(p))?,
            None => eprintln!("warning: no estimates, {} not written", p.display()),
        }
    }
    println!("scenes = {}", scenes.len());
    println!("dead_pixels = {}", cal.report.dead_pixels.len());
    if let Some(a) = cal.report.median_slope {
        println!("median_slope_a = {a}");
    }
    if let Some(b) = cal.report.median_intercept {
        println!("median_intercept_b = {b}");
    }
    match &cal.params {
        Some(p) => {
            println!("mu_dark = {}", p.mu_dark);
            println!("sigma_dark_S = {}", p.sigma_dark_s);
        }
        None => println!("estimates = none"),
    }
    for w in &cal.report.warnings {
        eprintln!("warning: {w}");
    }
    Ok(())
}

fn write_image(dir: &Path, stem: &str, img: &Image) -> CliResult {
    let pgm = dir.join(format!("{stem}.pgm"));
    fs::write(&pgm, img.to_pgm()).map_err(|e| with_path(&pgm)(e.into()))?;
    let mut text = String::new();
    for row in img.data.chunks(img.width) {
        let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        text.push_str(&line.join(" "));
        text.push('\n');
    }
    let txt = dir.join(format!("{stem}.txt"));
    fs::write(&txt, text).map_err(|e| with_path(&txt)(e.into()))
}

fn cmd_analyze(args: AnalyzeArgs) -> CliResult {
    let order = if args.msb_first {
        BitOrder::MsbFirst
    } else {
        BitOrder::LsbFirst
    };
    let stream = read_spikes_with(&args.input, order).map_err(with_path(&args.input))?;
    if !(args.isi || args.counts || args.tfp.is_some() || args.tfi) {
        return Err(Failure::usage(
            "nothing to do: pass at least one of --isi, --counts, --tfp, --tfi",
        ));
    }
    fs::create_dir_all(&args.out).map_err(|e| with_path(&args.out)(e.into()))?;
    let write = |name: &str, text: String| -> CliResult {
        let p = args.out.join(name);
        fs::write(&p, text).map_err(|e| with_path(&p)(e.into()))
    };
    let mid = stream.n_frames() / 2;

    if args.counts {
        let per_frame = spikes_per_frame(&stream);
        let mut text = format!("# frames {}\n# pixels {}\n", stream.n_frames(), stream.pixels());
        text.push_str(&format!("# total_spikes {}\n", stream.total_spikes()));
        let rate = if stream.n_frames() > 0 {
            spikes_per_sampling(&stream)?
        } else {
            0.0
        };
        text.push_str(&format!("# spikes_per_sampling {rate}\nframe,count\n"));
        for (t, c) in per_frame.iter().enumerate() {
            text.push_str(&format!("{t},{c}\n"));
        }
        write("counts.txt", text)?;
        println!("spikes_per_sampling = {rate}");
        println!("total_spikes = {}", stream.total_spikes());
    }
    if args.isi {
        let h = isi_histogram(&stream);
        let mut text = format!(
            "# intervals {}\n# pixels_contributing {}\n",
            h.n_intervals(),
            h.pixels_contributing()
        );
        if let (Some(m), Some(v), Some(iqr)) = (h.mean(), h.variance(), h.interquartile_range()) {
            text.push_str(&format!("# mean {m}\n# variance {v}\n# iqr {iqr}\n"));
        }
        text.push_str(&h.to_text());
        write("isi.txt", text)?;
        println!("isi_intervals = {}", h.n_intervals());
        println!("isi_bins = {}", h.bins().len());
    }
    if let Some(window) = args.tfp {
        if window == 0 {
            return Err(Failure::usage("--tfp window must be at least 1"));
        }
        let center = args.tfp_center.unwrap_or(mid);
        let img = tfp_reconstruct(&stream, window, center)?;
        write_image(&args.out, "tfp", &img)?;
        println!("tfp = {}x{} (window {window}, center {center})", img.height, img.width);
    }
    if args.tfi {
        let at = args.tfi_at.unwrap_or(mid);
        let img = tfi_reconstruct(&stream, at);
        write_image(&args.out, "tfi", &img)?;
        println!("tfi = {}x{} (frame {at})", img.height, img.width);
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Scene(cmd) => cmd_scene(cmd),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Calibrate(args) => cmd_calibrate(args),
        Command::Analyze(args) => cmd_analyze(args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code)
        }
    }
}
