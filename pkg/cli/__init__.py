"""Command-line interface for extsum."""
