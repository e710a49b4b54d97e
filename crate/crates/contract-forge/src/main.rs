//! `contract-forge` binary: thin wrapper over [`contract_forge::cli`].

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    std::process::exit(contract_forge::cli::run());
}
