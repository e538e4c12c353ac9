"""API package for routers."""
