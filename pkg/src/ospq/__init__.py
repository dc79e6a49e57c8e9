"""Exact symbolic kernel for the quantum supergroup OSP_q(1|2n)."""
