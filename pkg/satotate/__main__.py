from satotate.cli import main

main(prog_name="satotate")
