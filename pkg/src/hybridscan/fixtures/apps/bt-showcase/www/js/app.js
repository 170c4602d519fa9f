var app = {
    initialize: function () {
        document.addEventListener('deviceready', this.onDeviceReady, false);
    },
    onDeviceReady: function () {
        document.getElementById('refresh').addEventListener('click', app.refreshDeviceList, false);
        app.refreshDeviceList();
    },
    refreshDeviceList: function () {
        bluetoothSerial.list(function (devices) {
            var list = document.getElementById('deviceList');
            list.innerHTML = '';
            for (var i = 0; i < devices.length; i++) {
                var m = devices[i].name;
                list.innerHTML += '<li>' + m + '</li>';
            }
        }, app.onError);
    },
    onError: function (reason) {
        console.log('bluetooth error: ' + reason);
    }
};

app.initialize();
