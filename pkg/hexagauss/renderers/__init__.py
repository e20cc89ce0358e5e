"""Renderers for hexagauss.

This package contains modules for rendering results:
    - report: JSON, text and CSV output of verification batches and Euler
      decompositions

Example:
    from hexagauss.core import generate_scenes, run_verification
    from hexagauss.renderers.report import render_batch

    batch = run_verification(generate_scenes("h3", count=5, seed=1))
    print(render_batch(batch, "text"))
"""
