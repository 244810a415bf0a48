//! `riskkit`: volatility models, Value-at-Risk, simulation, and capital
//! analytics behind one JSON-reporting command-line tool.

mod args;
mod plots;
mod report;
mod run;

fn main() {
    std::process::exit(run::main_exit_code());
}
