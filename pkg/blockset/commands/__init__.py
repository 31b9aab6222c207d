"""Command registrations for the blockset CLI."""
