pub mod cli;
pub mod coeffring;
pub mod genfun;
pub mod maps;
pub mod modular;
pub mod powerseries;
pub mod theta;
pub mod tutte;
