"""Min-cost seed selection on social graphs via RR-set sampling."""
