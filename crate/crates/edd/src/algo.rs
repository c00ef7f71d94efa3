use edd_core::{edd_a, edd_nste, greedy_connectivity, random_distribution, solve_exact, EddInstance, EddSolution};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Exact,
    Nste,
    EddA,
    Greedy,
    Random,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] =
        [Algorithm::Exact, Algorithm::Nste, Algorithm::EddA, Algorithm::Greedy, Algorithm::Random];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Exact => "exact",
            Algorithm::Nste => "nste",
            Algorithm::EddA => "edd-a",
            Algorithm::Greedy => "greedy",
            Algorithm::Random => "random",
        }
    }

    /// `seed` only matters for `random`.
    pub fn run(self, instance: &EddInstance, seed: u64) -> edd_core::Result<EddSolution> {
        match self {
            Algorithm::Exact => solve_exact(instance, None).map(|o| o.solution),
            Algorithm::Nste => edd_nste(instance),
            Algorithm::EddA => edd_a(instance),
            Algorithm::Greedy => greedy_connectivity(instance, seed),
            Algorithm::Random => random_distribution(instance, seed),
        }
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}
