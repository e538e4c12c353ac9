"""Webs, polynomials, resolution trees and line assignments."""
