from seedselect.cli import entry

entry()
