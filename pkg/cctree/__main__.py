from cctree.cli import run

run()
