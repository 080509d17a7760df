from taylorlam.cli import main

main()
