var app = {
    initialize: function () {
        document.addEventListener('deviceready', app.onDeviceReady, false);
    },
    onDeviceReady: function () {
        bluetoothSerial.list(app.ondevicelist, app.onerror);
    },
    ondevicelist: function (devices) {
        var listItem, deviceId;
        deviceList.innerHTML = '';
        devices.forEach(function (device) {
            listItem = document.createElement('li');
            deviceId = device.address;
            listItem.innerHTML = device.name + '<br/>' + deviceId;
            deviceList.appendChild(listItem);
        });
    },
    onerror: function (reason) {
        document.getElementById('message').textContent = 'Error: ' + reason;
    }
};

app.initialize();
