pub mod oracle;
pub mod rules;
