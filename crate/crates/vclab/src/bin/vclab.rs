use clap::Parser;

fn main() {
    let cli = vclab::cli::Cli::parse();
    let common = cli.common.clone();
    match vclab::cli::run(cli) {
        Ok(report) => {
            let rendered = match common.format {
                vclab::cli::Format::Json => report.render_json(),
                vclab::cli::Format::Text => report.render_text(),
            };
            match &common.report {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, rendered) {
                        eprintln!("vclab: cannot write report: {e}");
                        std::process::exit(2);
                    }
                }
                None => print!("{rendered}"),
            }
            std::process::exit(report.exit_code());
        }
        Err(e) => {
            eprintln!("vclab: {e}");
            std::process::exit(2);
        }
    }
}
