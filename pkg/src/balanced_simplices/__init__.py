"""Balanced simplices in orbits of additive cellular automata over Z/mZ."""
