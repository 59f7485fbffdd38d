use clap::{Parser, Subcommand, ValueEnum};
use prufer_cli::{run_decode, run_encode, run_enumerate, run_roundtrip, run_stats};
use prufer_cli::{CliError, EncodeRequest, Format};
use prufer_codec::label::Label;
use prufer_codec::netlist::DffPolicy;
use prufer_codec::prufer::Scheme;
use prufer_codec::tree::Method;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "prufer",
    version,
    about = "Encode connected graphs and circuit netlists as Prüfer sequences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Bench,
    Edgelist,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Treepart,
    Scesor,
    None,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Treepart => Method::TreePartition,
            MethodArg::Scesor => Method::Scesor,
            MethodArg::None => Method::Plain,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeArg {
    Raw,
    Dcc,
    Pcc,
    Lcc,
}

impl From<SchemeArg> for Scheme {
    fn from(s: SchemeArg) -> Scheme {
        match s {
            SchemeArg::Raw => Scheme::Raw,
            SchemeArg::Dcc => Scheme::Dcc,
            SchemeArg::Pcc => Scheme::Pcc,
            SchemeArg::Lcc => Scheme::Lcc,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum DffArg {
    Split,
    Single,
}

impl From<DffArg> for DffPolicy {
    fn from(d: DffArg) -> DffPolicy {
        match d {
            DffArg::Split => DffPolicy::Split,
            DffArg::Single => DffPolicy::Single,
        }
    }
}

#[derive(clap::Args)]
struct PipelineArgs {
    /// Input graph: a .bench netlist or an edge-list file.
    #[arg(short, long)]
    input: PathBuf,
    /// Input format; inferred from the extension when omitted.
    #[arg(short, long, value_enum)]
    format: Option<FormatArg>,
    /// Graph-to-tree enhancement method (`none` requires a tree input).
    #[arg(short, long, value_enum, default_value = "scesor")]
    method: MethodArg,
    /// Code-selection scheme; dcc and pcc require directed input.
    #[arg(short, long, value_enum, default_value = "raw")]
    scheme: SchemeArg,
    /// Flip-flop modeling policy for netlists.
    #[arg(long, value_enum, default_value = "split")]
    dff: DffArg,
    /// Start vertex override for the scesor traversal.
    #[arg(long)]
    start: Option<u32>,
    /// External vertex-ranking file consulted at tie-breaks.
    #[arg(long)]
    order: Option<PathBuf>,
}

impl PipelineArgs {
    fn to_request(&self) -> Result<EncodeRequest, CliError> {
        let start = match self.start {
            Some(0) => return Err(CliError::Input("vertex labels start at 1".into())),
            Some(b) => Some(Label::original(b)),
            None => None,
        };
        Ok(EncodeRequest {
            input: self.input.clone(),
            format: self.format.map(|f| match f {
                FormatArg::Bench => Format::Bench,
                FormatArg::Edgelist => Format::EdgeList,
            }),
            method: self.method.into(),
            scheme: self.scheme.into(),
            dff: self.dff.into(),
            start,
            order: self.order.clone(),
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Encode a graph into a Prüfer code file.
    Encode {
        #[command(flatten)]
        pipeline: PipelineArgs,
        /// Output code file.
        #[arg(short, long)]
        output: PathBuf,
        /// Also write the relabeling table (`old new` per line).
        #[arg(long)]
        map: Option<PathBuf>,
    },
    /// Decode a code file back into an edge-list graph file.
    Decode {
        /// Input code file.
        #[arg(short, long)]
        input: PathBuf,
        /// Output edge-list file.
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Encode then decode in-process and verify the graphs match.
    Roundtrip {
        #[command(flatten)]
        pipeline: PipelineArgs,
    },
    /// Statistics table over a directory of .bench circuits.
    Stats {
        /// Directory containing .bench files.
        #[arg(short, long)]
        dir: PathBuf,
        /// Enhancement method used for every circuit.
        #[arg(short, long, value_enum, default_value = "treepart")]
        method: MethodArg,
        /// Flip-flop modeling policy.
        #[arg(long, value_enum, default_value = "split")]
        dff: DffArg,
    },
    /// Decode all n^(n-2) codes for small n and verify the bijection.
    Enumerate {
        /// Vertex count, between 2 and 8.
        #[arg(short, long)]
        n: u32,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Encode {
            pipeline,
            output,
            map,
        } => run_encode(&pipeline.to_request()?, &output, map.as_deref()),
        Command::Decode { input, output } => run_decode(&input, &output),
        Command::Roundtrip { pipeline } => run_roundtrip(&pipeline.to_request()?),
        Command::Stats { dir, method, dff } => run_stats(&dir, method.into(), dff.into()),
        Command::Enumerate { n } => run_enumerate(n),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
