pub mod demo;

#[cfg(target_arch = "wasm32")]
mod bindings;
