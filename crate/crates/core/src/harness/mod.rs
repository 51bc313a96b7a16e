//! Experiment configuration, CSV emission, and moment-exponent bookkeeping.
