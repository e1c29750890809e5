"""Shared record of acceptance verdicts, printed by the terminal summary hook."""

RESULTS: dict[int, str] = {}
