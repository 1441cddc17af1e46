//! Subcommand implementations; each returns a report or a data file.

pub mod embed;
pub mod gamma;
pub mod generate;
pub mod model;

/// CSV-safe rendering of a free-form label.
pub fn csv_label(text: &str) -> String {
    text.replace(',', ";")
}
