"""Schemas package for request/response DTOs."""
